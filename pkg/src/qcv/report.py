"""Run reports and their deterministic serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, TextIO

VERDICTS = ("pass", "fail", "discrepancy")


@dataclass
class RunReport:
    case_id: str
    verdict: str
    trail: list[str]
    claim: str
    expected: Any = None
    observed: Any = None
    covers: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if not self.trail:
            raise ValueError("a report needs a non-empty trail")

    def to_json(self) -> dict:
        return {
            "id": self.case_id,
            "verdict": self.verdict,
            "claim": self.claim,
            "expected": to_jsonable(self.expected),
            "observed": to_jsonable(self.observed),
            "trail": list(self.trail),
        }


def to_jsonable(value: Any) -> Any:
    """Fractions become 'p' / 'p/q' strings; containers are converted recursively.
    Floats are refused."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise TypeError("floating point values cannot be reported")
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value, key=repr)]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(value, k)) for k in value.__dataclass_fields__}
    return str(value)


def summary(reports: Iterable[RunReport]) -> dict[str, int]:
    counts = {v: 0 for v in VERDICTS}
    for r in reports:
        counts[r.verdict] += 1
    return counts


def emit_report(reports: list[RunReport], fmt: str, sink: TextIO) -> None:
    reports = sorted(reports, key=lambda r: r.case_id)
    if fmt == "json":
        doc = {"reports": [r.to_json() for r in reports], "summary": summary(reports)}
        sink.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    for r in reports:
        sink.write(f"[{r.verdict.upper()}] {r.case_id}: {r.claim}\n")
        for line in r.trail:
            sink.write(f"    {line}\n")
    s = summary(reports)
    sink.write(f"{len(reports)} cases: {s['pass']} pass, {s['fail']} fail, {s['discrepancy']} discrepancy\n")
    discrepancies = [r for r in reports if r.verdict == "discrepancy"]
    if discrepancies:
        sink.write("discrepancies (warnings):\n")
        for r in discrepancies:
            sink.write(f"    {r.case_id}: expected {to_jsonable(r.expected)}, observed {to_jsonable(r.observed)}\n")
