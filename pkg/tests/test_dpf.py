import json

import pytest

from qcv import dpf
from qcv.rational import RationalPoly
from qcv.surfaces import F0, F1, P2

PRINTED = {
    "numericaldpf_main": {10},
    "numericaldpf_main_n6": {10},
    "numericaldpf_1": {20},
    "numericaldpf_2": {14},
    "numericaldpf_3": {14},
    "numericaldpf_4": {14},
    "scroll_plane_on_Q6": {14},
    "mori_1": {10, 14},
    "mori_2": {8, 16},
    "mori_4": {14},
    "quadric_surface_fiber_n5": {6},
    "quadric_threefold_fiber_n6": {6},
    "quadric_fiber_over_surface_n6": {12},
    "veronese_fiber_n5": {10},
    "blowup_plane_in_fourfold": {16, 22},
    "delpezzo_surface_fiber": {8, 10, 12},
}


def test_catalog_names_are_unique_and_complete():
    names = [p.name for p in dpf.preset_catalog()]
    assert len(names) == len(set(names))
    assert set(names) == set(PRINTED)


@pytest.mark.parametrize("name", sorted(PRINTED))
def test_engine_matches_printed_degrees(name):
    p = dpf.preset(name)
    assert p.solve().degrees == PRINTED[name]
    assert p.matches()


def test_blowup_pairs_and_cap():
    sol = dpf.preset("blowup_plane_in_fourfold").solve()
    assert set(sol.solutions) == {(16, 1), (22, 2)}
    assert sol.degree_cap == 30


def test_identity_preset():
    for n, d in ((5, 22), (6, 32)):
        data = dpf.SurfaceRestrictionData(n=n, L2=1, c1T_L=0, c1T_sq=0, c2T=0)
        assert dpf.solve_degree(dpf.dpf2_equation(data), dpf.DegreeConstraints(even=False)).degrees == {d}


def test_zero_equation_is_unbounded():
    eq = dpf.DpfEquation(RationalPoly(), RationalPoly())
    with pytest.raises(dpf.UnboundedFamily):
        dpf.solve_degree(eq)


def test_adjunction_mismatch_fails_construction():
    with pytest.raises(dpf.InconsistentData):
        dpf.divisor_data(P2, P2.cls(-1), adjoint=2, L=P2.cls(2))
    with pytest.raises(dpf.InconsistentData):
        dpf.divisor_data(P2, P2.cls(-2), adjoint=2)
    data, notes = dpf.divisor_data(P2, P2.cls(-1), adjoint=2, L=P2.cls(1))
    assert data.L2 == 1 and len(notes) == 2


def test_rank_one_c2N_zero_is_noop():
    base = dict(n=5, L2=1, c1T_L=3, c1T_sq=9, c2T=3, c1N_L=-1, c1N_sq=1, c1N_c1T=-3)
    a = dpf.dpf2_equation(dpf.SurfaceRestrictionData(**base))
    b = dpf.dpf2_equation(dpf.SurfaceRestrictionData(**base, c2N=0))
    assert a == b
    with pytest.raises(dpf.InconsistentData):
        dpf.dpf2_equation(dpf.SurfaceRestrictionData(**base, c2N=1))


def test_wrong_normal_rank_rejected():
    with pytest.raises(dpf.InconsistentData):
        dpf.SurfaceRestrictionData(n=5, L2=1, c1T_L=0, c1T_sq=0, c2T=0, normal_rank=2)
    with pytest.raises(dpf.InconsistentData):
        dpf.SurfaceRestrictionData(n=5, L2=1, c1T_L=3, c1T_sq=8, c2T=3, surface="P2")


def test_equation_equivalence_under_scaling():
    eq = dpf.preset("mori_1").equation()
    scaled = dpf.DpfEquation(eq.constant * 3, eq.d_coefficient * 3, eq.param)
    assert eq.equivalent(scaled)


def test_constraints_window():
    sol = dpf.preset("delpezzo_surface_fiber").solve()
    assert set(sol.solutions) == {(8, 3), (10, 4), (12, 6)}
    assert sol.param_window == (3, 9)


def test_hirzebruch_surfaces():
    assert F0.K.dot(F0.K)(0) == 8
    assert F1.K.dot(F1.K)(0) == 8


def test_x3_check():
    forced = dpf.dpf3_x3_forced(dpf.delpezzo_threefold_fiber("Del Pezzo", 24), 12).forced
    assert forced == 24
    for name, euler in (("P1xP1xP1", 8), ("P(T_P2)", 6)):
        chk = dpf.dpf3_x3_forced(dpf.delpezzo_threefold_fiber(name, euler), 12)
        assert chk.forced == 24 and chk.expected == euler and chk.contradiction


def test_mori_3_bound():
    bound, sols = dpf.mori_3_bound()
    assert bound == 20
    assert max(s[0] for s in sols) == 20


def test_veronese_mod4():
    assert not dpf.veronese_mod4_check(10)
    assert dpf.veronese_mod4_check(12)


def test_preset_fixture_is_json():
    for p in dpf.preset_catalog():
        json.dumps(dpf.preset_fixture(p))
