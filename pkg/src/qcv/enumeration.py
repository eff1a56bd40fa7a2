"""Lattice sweep over (d, x, y) for conic bundles over surfaces.

For each even d the admissible (x, y) lie in the feasibility triangle; at
fixed d every unknown of the linear system is an affine function of (x, y),
so integrality of all of them at height y is a system of congruences in x
that collapses to a single residue class.  Only that class is visited.

Filters carry the numbers of the checklist they implement:

    1 range   20 <= d <= 276 (the configured d window)
    2 triangle        e2 >= 0, e1.D >= 0, y >= 0
    3 integrality     b1R, R^2, Db1, D^2, b2, g-1, chi(O_Y), chi(O_S)
    4 superbound      lo(d) <= g-1 <= hi(d), plus the optional plugin bound
    5 s3_chi          s3 >= 0 and the generalized Hodge index bound on chi(O_S)
    6 hodge_Y         (K_Y.R)^2 >= K_Y^2 R^2
    7 k3_tail         d > 98 implies g-1 <= d^2/12
"""

from __future__ import annotations

import importlib
import importlib.util
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Callable, Iterable

from .conic_bundle import AffineForm, SolutionVector, affine_forms, superbound, triangle
from .invariants import check_ghit, check_s3_nonneg
from .rational import render

FILTERS = ("triangle", "integrality", "superbound", "s3_chi", "hodge_Y", "k3_tail")
FILTER_ITEM = {"range": 1, "triangle": 2, "integrality": 3, "superbound": 4, "s3_chi": 5, "hodge_Y": 6, "k3_tail": 7}
INTEGRAL_QUANTITIES = ("b1R", "R2", "Db1", "D2", "b2", "g1", "chiY", "chiS")
DEFAULT_BUDGET = 10**9
K3_TAIL_FROM = 98

GrossBound = Callable[[int, Fraction], bool]


class RegionOverflow(RuntimeError):
    def __init__(self, d: int, count: int, budget: int):
        self.d, self.count, self.budget = d, count, budget
        super().__init__(f"d={d}: {count} lattice points exceed the budget {budget}")


def env_budget() -> int:
    raw = os.environ.get("QCV_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def load_plugin(spec: str) -> GrossBound:
    """'path/to/file.py:func' or 'package.module:func'."""
    target, _, name = spec.rpartition(":")
    if not target or not name:
        raise ValueError(f"plugin spec must look like 'file.py:func' or 'module:func', got {spec!r}")
    if target.endswith(".py"):
        mod_spec = importlib.util.spec_from_file_location("qcv_gross_plugin", target)
        if mod_spec is None or mod_spec.loader is None:
            raise ImportError(f"cannot load {target}")
        module = importlib.util.module_from_spec(mod_spec)
        mod_spec.loader.exec_module(module)
    else:
        module = importlib.import_module(target)
    fn = getattr(module, name)
    if not callable(fn):
        raise TypeError(f"{spec} is not callable")
    return fn


@dataclass(frozen=True)
class FilterConfig:
    d_min: int = 20
    d_max: int = 276
    filters: frozenset = frozenset(FILTERS)
    gross_bound: str | None = None
    budget: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "filters", frozenset(self.filters))
        unknown = self.filters - set(FILTERS)
        if unknown:
            raise ValueError(f"unknown filters {sorted(unknown)}")
        if self.d_min < 20:
            raise ValueError("d_min must be at least 20; smaller degrees are covered by the known-pairs table")
        if self.d_min % 2 or self.d_max % 2:
            raise ValueError("d_min and d_max must be even")
        if self.d_max < self.d_min:
            raise ValueError("empty degree window")

    def without(self, *names: str) -> FilterConfig:
        return FilterConfig(self.d_min, self.d_max, self.filters - set(names), self.gross_bound, self.budget)

    def on(self, name: str) -> bool:
        return name in self.filters

    def effective_budget(self) -> int:
        return self.budget if self.budget is not None else env_budget()

    def degrees(self) -> list[int]:
        return list(range(self.d_min, self.d_max + 1, 2))

    def to_json(self) -> dict:
        return {
            "d_min": self.d_min,
            "d_max": self.d_max,
            "filters": [f for f in FILTERS if f in self.filters],
            "gross_bound": self.gross_bound,
        }


def chi_OY(x, b2) -> Fraction:
    """Noether: chi(O_Y) = (K_Y^2 + c2(Y))/12."""
    return (Fraction(x) + Fraction(b2)) / 12


def chi_OS_from_cover(chi_y, R2, b1R) -> Fraction:
    """Double cover branched along 2R: chi(O_S) = 2 chi(O_Y) + R(R + K_Y)/2, K_Y.R = -b1R."""
    return 2 * Fraction(chi_y) + (Fraction(R2) - Fraction(b1R)) / 2


def hodge_Y_checks(v: SolutionVector, x, y=None) -> bool:
    """(K_Y.R)^2 >= K_Y^2 R^2, with K_Y = -b1 so K_Y^2 = x.

    The inequality is the Hodge index theorem and needs K_Y^2 > 0 or R^2 > 0;
    otherwise nothing is claimed and the check passes.
    """
    if x <= 0 and v.R2 <= 0:
        return True
    return v.b1R * v.b1R >= x * v.R2


def known_small_conic_bundles() -> frozenset[int]:
    """Degrees below 20 where conic bundles over surfaces on Q^5 exist."""
    return frozenset({6, 12, 14, 18})


@dataclass(frozen=True)
class _Inv:
    d: int
    g: Fraction
    chi_OS: Fraction
    chi_OX: Fraction


def _extended_forms(d: int) -> dict[str, AffineForm]:
    f = dict(affine_forms(d))
    b2 = f["b2"]
    chi_y = AffineForm((1 + b2.ax) / 12, b2.ay / 12, b2.c / 12)
    f["chiY"] = chi_y
    f["chiS"] = AffineForm(
        2 * chi_y.ax + (f["R2"].ax - f["b1R"].ax) / 2,
        2 * chi_y.ay + (f["R2"].ay - f["b1R"].ay) / 2,
        2 * chi_y.c + (f["R2"].c - f["b1R"].c) / 2,
    )
    return f


def _residue_class(forms: Iterable[AffineForm], y: int) -> tuple[int, int] | None:
    """x mod m such that every ax*x + (ay*y + c) is an integer, or None."""
    r, m = 0, 1
    for f in forms:
        a, b = f.ax, f.ay * y + f.c
        n = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        A, B = int(a * n) % n, int(-b * n) % n
        g = gcd(A, n)
        if B % g:
            return None
        A, B, n = A // g, B // g, n // g
        if n == 1:
            continue
        s = B * pow(A, -1, n) % n
        # combine x = r mod m with x = s mod n
        g = gcd(m, n)
        if (s - r) % g:
            return None
        lcm = m // g * n
        t = ((s - r) // g * pow(m // g, -1, n // g)) % (n // g) if n // g > 1 else 0
        r, m = (r + m * t) % lcm, lcm
    return r, m


def _count_in_class(lo: int, hi: int, r: int, m: int) -> int:
    if hi < lo:
        return 0
    first = lo + (r - lo) % m
    return 0 if first > hi else (hi - first) // m + 1


@dataclass
class DegreeResult:
    d: int
    lattice_points: int
    histogram: dict[str, int]
    witnesses: list[dict]

    def to_json(self) -> dict:
        return {"d": self.d, "lattice_points": self.lattice_points, "histogram": dict(self.histogram), "witnesses": self.witnesses}


def _witness(d: int, x: int, y: int, vals: dict[str, Fraction]) -> dict:
    return {
        "x": x,
        "y": y,
        "v": [render(vals[k]) for k in ("b1R", "R2", "Db1", "D2", "b2")],
        "chiY": render(vals["chiY"]),
        "chiS": render(vals["chiS"]),
        "g": render(vals["g1"] + 1),
    }


def first_failing_filter(d: int, x: int, y: int, vals: dict[str, Fraction], config: FilterConfig,
                         bounds: tuple[Fraction, Fraction], gross: GrossBound | None) -> str | None:
    """Filters 4-7 in order; 2 and 3 are handled by the lattice walk."""
    g1 = vals["g1"]
    if config.on("superbound"):
        lo, hi = bounds
        if not lo <= g1 <= hi:
            return "superbound"
    if gross is not None and not gross(d, g1 + 1):
        return "superbound"
    if config.on("s3_chi"):
        # chi(O_X) = chi(O_Y): the fibers are rational curves
        inv = _Inv(d, g1 + 1, vals["chiS"], vals["chiY"])
        if not check_s3_nonneg(inv) or not check_ghit(inv):
            return "s3_chi"
    if config.on("hodge_Y"):
        v = SolutionVector(*(vals[k] for k in ("b1R", "R2", "Db1", "D2", "b2")))
        if not hodge_Y_checks(v, x, y):
            return "hodge_Y"
    if config.on("k3_tail") and d > K3_TAIL_FROM and g1 > Fraction(d * d, 12):
        return "k3_tail"
    return None


def enumerate_degree(d: int, config: FilterConfig, gross: GrossBound | None = None) -> DegreeResult:
    if gross is None and config.gross_bound:
        gross = load_plugin(config.gross_bound)
    t = triangle(d)
    forms = _extended_forms(d)
    bounds = superbound(d, strict=False)
    use_triangle = config.on("triangle")
    integral = config.on("integrality")
    y_top = floor(t.v3[1])
    if use_triangle:
        ranges = []
        for y in range(0, y_top + 1):
            lo, hi = t.x_interval(y)
            ranges.append((y, ceil(lo), floor(hi)))
    else:
        # bounding box of the triangle, y >= 0
        xs = (t.v1[0], t.v2[0], t.v3[0])
        ranges = [(y, ceil(min(xs)), floor(max(xs))) for y in range(0, y_top + 1)]
    total = sum(max(0, hi - lo + 1) for _, lo, hi in ranges)
    budget = config.effective_budget()
    if total > budget:
        raise RegionOverflow(d, total, budget)
    # points outside the walked region are never visited; lattice_points is its size
    hist = {name: 0 for name in FILTERS[1:]}
    integral_forms = [forms[k] for k in INTEGRAL_QUANTITIES]
    witnesses = []
    for y, lo, hi in ranges:
        if hi < lo:
            continue
        if integral:
            cls = _residue_class(integral_forms, y)
            if cls is None:
                hist["integrality"] += hi - lo + 1
                continue
            r, m = cls
            hist["integrality"] += (hi - lo + 1) - _count_in_class(lo, hi, r, m)
            start = lo + (r - lo) % m
        else:
            start, m = lo, 1
        for x in range(start, hi + 1, m):
            vals = {k: f(x, y) for k, f in forms.items()}
            failed = first_failing_filter(d, x, y, vals, config, bounds, gross)
            if failed is None:
                witnesses.append(_witness(d, x, y, vals))
            else:
                hist[failed] += 1
    return DegreeResult(d, total, hist, witnesses)


@dataclass
class SurvivorReport:
    config: FilterConfig
    degrees: list[DegreeResult] = field(default_factory=list)

    @property
    def survivors(self) -> list[int]:
        return [r.d for r in self.degrees if r.witnesses]

    def witnesses(self, d: int) -> list[dict]:
        return next((r.witnesses for r in self.degrees if r.d == d), [])

    def rejection_histogram(self) -> dict[str, dict[str, int]]:
        return {str(r.d): {"lattice_points": r.lattice_points, **r.histogram} for r in self.degrees}

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "survivors": [{"d": r.d, "witnesses": r.witnesses} for r in self.degrees if r.witnesses],
            "rejection_histogram": self.rejection_histogram(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def merge(config: FilterConfig, parts: Iterable[SurvivorReport]) -> SurvivorReport:
        by_d = {}
        for part in parts:
            for r in part.degrees:
                if r.d in by_d:
                    raise ValueError(f"degree {r.d} computed twice")
                by_d[r.d] = r
        return SurvivorReport(config, [by_d[d] for d in sorted(by_d)])


def _worker(args: tuple[FilterConfig, list[int]]) -> list[DegreeResult]:
    config, ds = args
    gross = load_plugin(config.gross_bound) if config.gross_bound else None
    return [enumerate_degree(d, config, gross) for d in ds]


def partition(degrees: list[int], parts: int) -> list[list[int]]:
    """Round-robin split, so that the expensive large degrees are spread out."""
    parts = max(1, min(parts, len(degrees)))
    return [degrees[i::parts] for i in range(parts)]


def run(config: FilterConfig | None = None, jobs: int = 1, gross: GrossBound | None = None) -> SurvivorReport:
    """Sweep the configured degree window.  ``gross`` overrides the plugin spec
    (single process only)."""
    config = config or FilterConfig()
    degrees = config.degrees()
    if jobs <= 1 or gross is not None:
        if gross is None and config.gross_bound:
            gross = load_plugin(config.gross_bound)
        return SurvivorReport(config, [enumerate_degree(d, config, gross) for d in degrees])
    chunks = partition(degrees, jobs)
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        results = list(pool.map(_worker, [(config, c) for c in chunks]))
    return SurvivorReport.merge(config, [SurvivorReport(config, r) for r in results])


def revalidate(d: int, witness: dict) -> list[str]:
    """Recheck a witness from scratch; returns the list of problems (empty if fine)."""
    from .conic_bundle import e1D_scaled, e2_scaled, genus_of_point, residual, solve_point

    x, y = witness["x"], witness["y"]
    problems = []
    v = solve_point((d, x, y))
    if any(residual(d, x, y, v)):
        problems.append("nonzero residual")
    if [render(c) for c in v.as_tuple()] != witness["v"]:
        problems.append("solution vector differs")
    try:
        if e2_scaled(d, x, y) < 0 or e1D_scaled(d, x, y) < 0:
            problems.append("outside the triangle")
        g1 = genus_of_point(d, x, y)
    except ValueError as exc:
        problems.append(str(exc))
        return problems
    if render(g1 + 1) != witness["g"]:
        problems.append("genus differs")
    cy = chi_OY(x, v.b2)
    cs = chi_OS_from_cover(cy, v.R2, v.b1R)
    if render(cy) != witness["chiY"] or render(cs) != witness["chiS"]:
        problems.append("chi values differ")
    for q in (*v.as_tuple(), g1, cy, cs):
        if q.denominator != 1:
            problems.append(f"non-integer value {render(q)}")
    return problems


# the operation is named after the checklist it reproduces
enumerate = run  # noqa: A001
