"""The ten acceptance criteria, each printing one PASS/FAIL line."""

import os
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from qcv import conic_bundle as cb
from qcv import dpf, enumeration, registry, screens

GRID = range(20, 277, 2)


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] criterion {label}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def test_criterion_01_blowup(verdict):
    sol = dpf.preset("blowup_plane_in_fourfold").solve()
    verdict("1", set(sol.solutions) == {(16, 1), (22, 2)}, f"solutions {sorted(sol.solutions)}")


def test_criterion_02_delpezzo_fibers(verdict):
    sol = dpf.preset("delpezzo_surface_fiber").solve()
    got = {(delta, d) for d, delta in sol.solutions}
    verdict("2", got == {(3, 8), (4, 10), (6, 12)}, f"(Delta, d) = {sorted(got)}")


def test_criterion_03_restriction_table(verdict):
    expected = [
        ("numericaldpf_main", {10}), ("numericaldpf_1", {20}), ("numericaldpf_2", {14}),
        ("numericaldpf_3", {14}), ("numericaldpf_4", {14}), ("scroll_plane_on_Q6", {14}),
        ("mori_1", {10, 14}), ("mori_2", {8, 16}), ("mori_4", {14}),
        ("quadric_surface_fiber_n5", {6}), ("quadric_fiber_over_surface_n6", {12}),
    ]
    wrong = []
    for name, want in expected:
        got = dpf.preset(name).solve().degrees
        if got != want:
            wrong.append(f"{name}: expected {sorted(want)}, got {sorted(got)}")
    verdict("3", not wrong, f"{len(expected) - len(wrong)}/{len(expected)} exact; " + "; ".join(wrong) if wrong else "11/11 exact")


def test_criterion_04_delpezzo_mukai(verdict):
    a, b = screens.del_pezzo_variety_degrees(), screens.mukai_degrees()
    verdict("4", a == {4, 6} and b == {(6, 4), (8, 5)}, f"Del Pezzo {sorted(a)}, Mukai {sorted(b)}")


def test_criterion_05_fano(verdict):
    feasible = [d for d in range(22, 201, 2) if screens.fano_threefold_feasible(d)[0]]
    bound = screens.fano_fibration_bound(5)
    sub24 = screens.fiber_witnesses(24) == [] and any(line.startswith("d=24 forces") for line in bound.trail)
    ok = not feasible and screens.fano_fibration_max_degree(5) == 20 and sub24
    verdict("5", ok, f"feasible Fano degrees in [22,200]: {feasible}; fibration bound {bound.bound}; d=24 rejected: {sub24}")


def test_criterion_06_degree_12(verdict):
    sol, trail = screens.resolve_delpezzo_fibration_invariants(12)
    cands = [line for line in trail if line.startswith("(g, chi) =")]
    rejected = [line.split(":")[0] for line in cands if line.endswith("rejected")]
    p4 = screens.notinp4_check(12)
    forced = dpf.dpf3_x3_forced(dpf.delpezzo_threefold_fiber("Del Pezzo", 24), 12).forced
    fibers = [dpf.dpf3_x3_forced(dpf.delpezzo_threefold_fiber(n, e), 12) for n, e in (("P1xP1xP1", 8), ("P(T_P2)", 6))]
    ok = (
        (sol.g, sol.chi_OS, sol.p_g, sol.q) == (10, 3, 2, 0)
        and len(cands) == 3
        and rejected == ["(g, chi) = (7, 1)", "(g, chi) = (13, 5)"]
        and all(Fraction(line.split("q = ")[1].split()[0]).denominator != 1 for line in cands if line.endswith("rejected"))
        and (p4.g, p4.chi) == (25, 13) and p4.excluded
        and forced == 24 and [f.expected for f in fibers] == [8, 6] and all(f.contradiction for f in fibers)
    )
    verdict("6", ok, f"(g,chi,p_g,q) = {(sol.g, sol.chi_OS, sol.p_g, sol.q)}, {len(cands)} candidates, P^4 check {(int(p4.g), int(p4.chi))}, x3 forced {forced}")


def test_criterion_07_conic_algebra(verdict):
    det_bad = [d for d in GRID if cb.P_from_determinant(d) != cb.P(d)]
    rng = random.Random(2024)
    res_bad = 0
    dual = []
    for _ in range(1000):
        d = rng.randrange(20, 277, 2)
        x, y = rng.randrange(-1000, 20000), rng.randrange(0, 2000)
        v = cb.solve_point((d, x, y))
        if any(cb.residual(d, x, y, v)):
            res_bad += 1
        try:
            cb.solve_point((d, x, y), strict=True)
            cb.e2_scaled(d, x, y), cb.e1D_scaled(d, x, y), cb.genus_of_point(d, x, y)
        except cb.PrintedFormulaDiscrepancy as exc:
            dual.extend(exc.discrepancies)
    rows = cb.compare_with_derivation(44, printed_rhs=True).faulty_rows
    ok = not det_bad and res_bad == 0 and not dual and rows == [4]
    verdict("7", ok, f"det mismatches {det_bad}, nonzero residuals {res_bad}/1000, dual-path discrepancies {len(dual)}, "
            f"documented printed-system discrepancy in row {rows}")


def test_criterion_08_triangle_and_cascade(verdict):
    bad = []
    for d in GRID:
        t = cb.triangle(d)
        s1, s2 = t.slopes
        lo, hi = cb.superbound(d)
        if not (t.v1[0] < t.v2[0] and s1 > 0 > s2 and lo == cb.genus_of_point(d, *t.v1) and hi == cb.genus_of_point(d, *t.v2)):
            bad.append(d)
    c = cb.degree_bound_cascade()
    cascade = [c.by_case("notcontained").max_d] + [c.contained()[k] for k in range(10, 2, -1)] + [c.by_case("degree_four").max_d]
    two = cb.cascade_contradiction(c.by_case("degree_two"))
    ok = not bad and cascade == [98, 64, 58, 54, 48, 44, 40, 40, 276, 42] and two
    verdict("8", ok, f"grid failures {bad}, cascade {cascade}, degree-two contradiction {two}")


def test_criterion_09_enumeration(verdict, full_report):
    revalid = all(en == [] for d in full_report.survivors for en in (enumeration.revalidate(d, w) for w in full_report.witnesses(d)))
    again = enumeration.run(enumeration.FilterConfig()).dumps() == full_report.dumps()
    split = enumeration.run(enumeration.FilterConfig(), jobs=2).dumps() == full_report.dumps()
    ok = 44 in full_report.survivors and revalid and again and split
    verdict("9", ok, f"survivors {full_report.survivors}, witnesses re-validate {revalid}, deterministic {again}, partition-equal {split}")


def test_criterion_09_gross_bound(verdict, capsys):
    spec = os.environ.get("QCV_GROSS_BOUND")
    if not spec:
        with capsys.disabled():
            print("\n[acceptance] criterion 9 (survivors = {44}): SKIPPED (no certified gross-bound plugin in QCV_GROSS_BOUND)")
        pytest.skip("survivors = {44} needs the external genus bound as a plugin (QCV_GROSS_BOUND=file.py:func)")
    report = enumeration.run(enumeration.FilterConfig(gross_bound=spec))
    verdict("9 (with plugin)", report.survivors == [44], f"survivors {report.survivors}")


def _property_outcomes():
    from conftest import PROPERTY_OUTCOMES

    if PROPERTY_OUTCOMES:
        return dict(PROPERTY_OUTCOMES)
    here = Path(__file__).parent
    files = sorted(str(p) for p in here.glob("test_*.py") if p.name != "test_acceptance.py")
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-rf", "-p", "no:cacheprovider", *files],
                          capture_output=True, text=True, cwd=here.parent)
    failed = {line.split()[1]: "failed" for line in proc.stdout.splitlines() if line.startswith("FAILED ")}
    return failed or {"<subprocess>": "passed" if proc.returncode == 0 else "failed"}


def test_criterion_10_properties_and_coverage(verdict):
    outcomes = _property_outcomes()
    failed = sorted(k for k, v in outcomes.items() if v == "failed")
    gaps = registry.coverage_gaps()
    verdict("10", not failed and not gaps, f"failing property tests {failed}; uncovered topics {gaps}")
