import random
from fractions import Fraction

import pytest
import sympy as sp

from qcv import conic_bundle as cb
from qcv.genus import contained_bound
from qcv.rational import determinant

GRID = range(20, 277, 2)


def test_P_matches_determinant_on_grid():
    assert all(cb.P_from_determinant(d) == cb.P(d) for d in GRID)
    assert cb.P(20) == 1776


def test_sympy_oracle_determinant_and_solution():
    d, x, y = sp.symbols("d x y")
    rows = [[sp.Rational(str(c)) for c in row] for row in cb.build_matrix(44).to_lists()]
    m = sp.Matrix(rows)
    assert -m.det() / 2 == 3 * 44**3 - 27 * 44**2 - 1520 * 44 + 18976
    # affine solution in (x, y) through sympy's own solver
    mm, c0 = cb.build_system(44, 0, 0)
    _, cx = cb.build_system(44, 1, 0)
    _, cy = cb.build_system(44, 0, 1)
    c = sp.Matrix([sp.Rational(str(a)) + (sp.Rational(str(b)) - sp.Rational(str(a))) * x
                   + (sp.Rational(str(e)) - sp.Rational(str(a))) * y for a, b, e in zip(c0, cx, cy)])
    sol = m.LUsolve(c)
    forms = cb.affine_forms(44)
    for name, expr in zip(cb.UNKNOWNS, sol):
        f = forms[name]
        assert sp.expand(expr - (sp.Rational(str(f.ax)) * x + sp.Rational(str(f.ay)) * y + sp.Rational(str(f.c)))) == 0


def test_solve_is_exact_at_sampled_points():
    rng = random.Random(20)
    for _ in range(1000):
        d = rng.randrange(20, 277, 2)
        x, y = rng.randrange(-500, 5000), rng.randrange(0, 400)
        v = cb.solve_point(cb.ConicBundlePoint(d, x, y))
        assert cb.residual(d, x, y, v) == [0] * 5


def test_known_point():
    v = cb.solve_point((44, 330, 54))
    assert v.as_tuple() == (-108, 30, -228, 78, 618)
    assert v.g1(44, 54) + 1 == 158


def test_negative_y_rejected():
    with pytest.raises(ValueError):
        cb.ConicBundlePoint(44, 1, -1)


def test_dual_paths_agree():
    rng = random.Random(7)
    for _ in range(200):
        d = rng.randrange(20, 277, 2)
        x, y = rng.randrange(0, 3000), rng.randrange(0, 300)
        cb.solve_point((d, x, y), strict=True)
        p = cb.P(d)
        v = cb.solve_system(d, x, y)
        assert cb.e2_scaled(d, x, y) == v.e2(d, y) * p
        assert cb.e1D_scaled(d, x, y) == v.e1D(y) * p
        assert cb.genus_of_point(d, x, y) == v.g1(d, y)


def test_printed_system_discrepancy_is_stable():
    runs = [cb.compare_with_derivation(d, printed_rhs=True).faulty_rows for d in (20, 44, 98)]
    assert runs == [[4], [4], [4]]
    assert cb.compare_with_derivation(44, printed_rhs=False).faulty_rows == []


def test_derived_matrix_is_a_row_transform_of_printed():
    comp = cb.compare_with_derivation(60, printed_rhs=False)
    assert determinant(comp.transform) != 0


def test_triangle_on_grid():
    for d in GRID:
        t = cb.triangle(d)
        s1, s2 = t.slopes
        assert t.v1[0] < t.v2[0]
        assert s1 > 0 > s2
        assert (t.v1[0], t.v2[0]) == (cb.x1_closed(d), cb.x2_closed(d))
        assert t.v3 == cb.v3_closed(d)
        assert t.contains(*t.v3) and not t.contains(t.v3[0], t.v3[1] + 1)


def test_superbound_is_vertex_genus():
    for d in GRID:
        t = cb.triangle(d)
        lo, hi = cb.superbound(d)
        assert lo == cb.genus_of_point(d, *t.v1) and hi == cb.genus_of_point(d, *t.v2)
        assert cb.genus_range(d)[0] == lo


def test_apex_beats_upper_end_only_below_32():
    above = [d for d in GRID if cb.genus_range(d)[1] > cb.superbound(d)[1]]
    assert above == [20, 22, 24, 26, 28, 30]
    assert cb.genus_of_point(20, *cb.triangle(20).v3) == Fraction(295, 8)


def test_lo_exceeds_k3_containment_bound_above_98():
    bad = [d for d in range(100, 401, 2) if not cb.superbound(d)[0] > contained_bound(d, 3)]
    assert bad == []


def test_lo_exceeds_k3_containment_bound_beyond_276():
    assert all(cb.superbound(d)[0] > contained_bound(d, 3) for d in range(278, 501, 2))
    assert cb.superbound(276)[0] <= contained_bound(276, 3)
    assert cb.k3_tail_gap(278) > 0 >= cb.k3_tail_gap(276)


def test_cascade():
    c = cb.degree_bound_cascade()
    assert c.by_case("notcontained").max_d == 98
    assert [c.contained()[k] for k in range(10, 2, -1)] == [64, 58, 54, 48, 44, 40, 40, 276]
    assert c.by_case("degree_four").max_d == 42
    two = c.by_case("degree_two")
    assert two.max_d is None and cb.cascade_contradiction(two)


def test_printed_fixture_loads():
    data = cb.printed()
    assert len(data.matrix) == 5 and len(data.rhs) == 5
