import io
from fractions import Fraction

import pytest

from qcv.complete_intersection import dpf2_residual_dot_L, dpf3_residual, quadric_threefold, threefold_numbers
from qcv.invariants import (
    FIXTURE_FIELDS,
    OddDegree,
    Surface4Invariants,
    Threefold5Invariants,
    check_ghit,
    check_s3_nonneg,
    dump_known_pairs,
    k2l,
    k3,
    kl2,
    known_pairs,
    load_known_pairs,
    lookup,
    surface_k2,
    threefold_invariants,
)

CI_TYPES = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (1, 5)]


@pytest.mark.parametrize("d", [3, 5, 45, 99])
def test_odd_degree_rejected(d):
    with pytest.raises(OddDegree):
        Threefold5Invariants(d, 0, 1, 1)
    with pytest.raises(OddDegree):
        Surface4Invariants(d, 0, 1)


def test_known_pairs_give_integral_adjoint_numbers():
    seen = 0
    for rec in known_pairs():
        inv = threefold_invariants(rec)
        if inv is None or rec.n not in (None, 5):
            continue
        seen += 1
        for v in (kl2(inv), k2l(inv), k3(inv)):
            assert v.denominator == 1, rec.type_label
    assert seen >= 8


def test_surface_k2_picks_out_4_and_6():
    hits = [d for d in range(2, 101, 2) if surface_k2(Surface4Invariants(d, 1, 1)) == d]
    assert hits == [4, 6]


def test_lookup():
    assert [r.type_label for r in lookup(6, 5)] == ["F", "G"]
    assert len(known_pairs()) == 13
    assert all(r.d % 2 == 0 for r in known_pairs())


def test_fixture_round_trip():
    buf = io.StringIO()
    dump_known_pairs(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 13
    assert lines[0].startswith('{"' + FIXTURE_FIELDS[0] + '"')
    assert load_known_pairs(io.StringIO(buf.getvalue())) == known_pairs()


@pytest.mark.parametrize("extra", CI_TYPES)
def test_closed_forms_against_chern_numbers(extra):
    t = threefold_numbers(quadric_threefold(*extra))
    inv = Threefold5Invariants(t.d, t.g, int(t.chi_OS), int(t.chi_OX))
    assert kl2(inv) == -t.x1L2
    assert k2l(inv) == t.x1sqL
    assert k3(inv) == -t.x1cube
    assert dpf2_residual_dot_L(t) == 0
    assert dpf3_residual(t) == 0
    assert check_s3_nonneg(inv).ok and check_ghit(inv).ok


def test_surface_relation_on_sections():
    for extra in CI_TYPES:
        X = quadric_threefold(*extra)
        t = threefold_numbers(X)
        actual = Fraction(X.hyperplane_section().integrate(1, 1))
        assert surface_k2(Surface4Invariants(t.d, t.g, int(t.chi_OS))) == actual


def test_verdict_carries_residual():
    v = check_s3_nonneg(threefold_invariants(lookup(2)[0]))
    assert isinstance(v.residual, Fraction)
    assert bool(v) == v.ok
