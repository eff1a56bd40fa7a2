import io
import json
import re
from fractions import Fraction
from pathlib import Path

import pytest

from qcv import registry
from qcv.cli import main
from qcv.report import RunReport, emit_report, to_jsonable

GOLDEN = Path(__file__).parent / "golden"
FLOAT = re.compile(r"(?<![\w/])-?\d+\.\d+")


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_verify_text_matches_golden():
    code, text = run_cli("verify", "mukai", "delpezzo.variety", "degeven", "secondreduction.blowup")
    assert code == 0
    assert text == (GOLDEN / "verify_small.txt").read_text()


def test_triangle_json_matches_golden():
    code, text = run_cli("conic-bundle", "triangle", "--d", "44", "--json", "-")
    assert code == 0
    assert json.loads(text) == json.loads((GOLDEN / "triangle_44.json").read_text())
    assert not FLOAT.search(text)


def test_unknown_id_exits_nonzero(capsys):
    code, _ = run_cli("verify", "nope")
    assert code == 2
    assert "unknown case id: nope" in capsys.readouterr().err
    with pytest.raises(registry.UnknownCaseId):
        registry.verify(["nope"])


def test_discrepancy_is_a_warning_unless_strict():
    code, text = run_cli("verify", "divisorialmori.2")
    assert code == 0
    assert "[DISCREPANCY] divisorialmori.2" in text and "discrepancies (warnings):" in text
    code, _ = run_cli("verify", "divisorialmori.2", "--strict")
    assert code == 1


def test_verify_json_file(tmp_path):
    path = tmp_path / "out.json"
    code, _ = run_cli("verify", "fanofibration.n5", "notinp4", "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert [r["id"] for r in doc["reports"]] == ["fanofibration.n5", "notinp4"]
    assert doc["summary"] == {"pass": 2, "fail": 0, "discrepancy": 0}
    assert not FLOAT.search(path.read_text())


def test_solve_dpf(tmp_path):
    code, text = run_cli("solve", "dpf", "--preset", "blowup_plane_in_fourfold")
    assert code == 0 and "solutions: (d=16, a=1), (d=22, a=2)" in text
    code, text = run_cli("solve", "dpf", "--preset", "mori_1", "--json", "-")
    doc = json.loads(text)
    assert doc["solutions"] == [[10, 1], [14, 2]] and doc["matches_expected"]
    code, text = run_cli("solve", "dpf", "--list")
    assert "delpezzo_surface_fiber" in text
    code, _ = run_cli("solve", "dpf", "--preset", "nothing")
    assert code == 2


def test_conic_bundle_solve_and_bounds():
    code, text = run_cli("conic-bundle", "solve", "--d", "44", "--x", "330", "--y", "54", "--json", "-")
    doc = json.loads(text)
    assert doc["v"] == {"b1R": "-108", "R2": "30", "Db1": "-228", "D2": "78", "b2": "618"}
    assert doc["g"] == "158" and doc["residual"] == ["0"] * 5
    code, text = run_cli("conic-bundle", "bounds")
    assert "k=6: d <= 44" in text and "k=7: d <= 48" in text


def test_enumerate_small_window(tmp_path):
    path = tmp_path / "enum.json"
    code, text = run_cli("enumerate", "conic-bundle", "--d-min", "40", "--d-max", "46", "--json", str(path))
    assert code == 0 and "survivors: [44]" in text
    doc = json.loads(path.read_text())
    assert doc["survivors"][0]["d"] == 44


def test_enumerate_overflow_exit():
    code, _ = run_cli("enumerate", "conic-bundle", "--d-min", "100", "--d-max", "100", "--budget", "3")
    assert code == 3


def test_known_pairs_table():
    code, text = run_cli("table", "known-pairs")
    assert code == 0 and len(text.splitlines()) == 13
    code, text = run_cli("table", "known-pairs", "--json", "-")
    assert len(json.loads(text)) == 13
    code, text = run_cli("table", "known-pairs", "--jsonl")
    assert all(json.loads(line) for line in text.splitlines())


def test_report_serialization():
    r = RunReport("x", "pass", ["t"], "claim", Fraction(1, 3), {(1, 2)})
    assert to_jsonable(r.expected) == "1/3"
    with pytest.raises(TypeError):
        to_jsonable(0.5)
    with pytest.raises(ValueError):
        RunReport("x", "pass", [], "claim")
    with pytest.raises(ValueError):
        RunReport("x", "maybe", ["t"], "claim")
    buf = io.StringIO()
    emit_report([r], "json", buf)
    assert json.loads(buf.getvalue())["reports"][0]["expected"] == "1/3"


def test_empty_report_is_valid():
    buf = io.StringIO()
    emit_report([], "json", buf)
    assert json.loads(buf.getvalue()) == {"reports": [], "summary": {"pass": 0, "fail": 0, "discrepancy": 0}}
    buf = io.StringIO()
    emit_report([], "text", buf)
    assert buf.getvalue() == "0 cases: 0 pass, 0 fail, 0 discrepancy\n"


def test_registry_covers_every_topic():
    assert set(registry.PRIMARY_CASE) == set(registry.TOPICS)
    assert registry.coverage_gaps() == []
    assert registry.covered_topics() == set(registry.TOPICS)
    assert len(registry.cases()) >= 30


def test_verify_order_is_by_id():
    ids = ["mukai", "degeven", "epas"]
    assert [r.case_id for r in registry.verify(ids, jobs=3)] == sorted(ids)
