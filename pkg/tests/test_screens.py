from fractions import Fraction

import pytest

from qcv import screens
from qcv.invariants import known_pairs


def test_del_pezzo_and_mukai():
    assert screens.del_pezzo_variety_degrees() == {4, 6}
    assert screens.mukai_degrees() == {(6, 4), (8, 5)}
    known = {r.d for r in known_pairs()}
    assert screens.del_pezzo_variety_degrees() | {d for d, _ in screens.mukai_degrees()} <= known


@pytest.mark.parametrize("d", range(22, 201, 2))
def test_no_fano_threefold_from_22(d):
    feasible, witnesses = screens.fano_threefold_feasible(d)
    assert not feasible and witnesses == []


def test_fano_relation():
    # -K^3 stays bounded while the relation needs mu >= 1 when d < 22
    assert screens.fano_relation(22, 0, 0) == 24
    assert screens.fano_relation(20, 1, 2) == (20 - 22) * 2 + 5 + 24


def test_fano_fibration_bound():
    b = screens.fano_fibration_bound(5)
    assert b.bound == 20 == screens.fano_fibration_max_degree(5)
    assert b.witness == screens.FiberWitness(9, -44, 214)
    assert screens.fiber_witnesses(24) == [] and screens.fiber_witnesses(22) == []
    assert any("d=24 forces" in line for line in b.trail)
    assert screens.fano_fibration_max_degree(6) == 30


def test_delpezzo_fiber_degree():
    deltas = {d: screens.delpezzo_fiber_degree(d) for d in range(2, 16, 2)}
    # a very ample fiber class has 3 <= K_F^2 <= 9
    assert [d for d, x in deltas.items() if x.denominator == 1 and 3 <= x <= 9] == [8, 10, 12]


def test_degree_12_fibration():
    first = screens.resolve_delpezzo_fibration_invariants(12)
    again = screens.resolve_delpezzo_fibration_invariants(12)
    assert first == again
    sol, trail = first
    assert (sol.g, sol.chi_OS, sol.p_g, sol.q) == (10, 3, 2, 0)
    candidates = [line for line in trail if line.startswith("(g, chi) =")]
    assert len(candidates) == 3
    rejected = [line for line in candidates if line.endswith("rejected")]
    assert rejected[0].startswith("(g, chi) = (7, 1)") and rejected[1].startswith("(g, chi) = (13, 5)")


def test_degree_12_fibration_needs_cap():
    with pytest.raises(screens.NoSolution):
        screens.resolve_delpezzo_fibration_invariants(12, genus_cap=9)


def test_socrelle_agrees_with_chi_relation():
    sol, _ = screens.resolve_delpezzo_fibration_invariants(12)
    p_g, q = screens.socrelle_pq(12, sol.g, sol.chi_OS, Fraction(6))
    assert (p_g, q) == (2, 0)


def test_notinp4():
    v8, v10, v12 = (screens.notinp4_check(d) for d in (8, 10, 12))
    assert v8.excluded and v10.excluded and v12.excluded
    assert v8.chi == Fraction(14, 3) and v10.chi == Fraction(25, 3)
    assert (v12.g, v12.chi) == (25, 13)
    assert "inconsistent" in v12.trail[-1]


def test_veronese_pairs():
    for c in screens.veronese_pair_checks():
        assert c.excluded and c.k2_actual != c.k2_forced
