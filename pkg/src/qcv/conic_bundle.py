"""Numerics of a conic bundle X -> Y over a surface, X a threefold on Q^5.

Unknowns on Y are v = (b1.R, R^2, D.b1, D^2, b2) with b1 = c1(Y), b2 = c2(Y),
R the ramification class of the double cover induced on a surface section,
D the discriminant curve; the parameters are d, x = b1^2 and y = D.R.

The degree-two double point relation cut with R, -b1, D and L, together
with the degree-three relation, is a 5x5 linear system M v = c.  Everything
downstream (the feasibility triangle, the genus line, the superbound and
the degree cascade) is computed from the exact solve of that system; the
printed closed forms kept in ``data/conic_bundle_printed.json`` are only
compared against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import ceil, floor

from .genus import contained_bound, notcontained_bound
from .rational import (
    Number,
    RationalMatrix,
    RationalPoly,
    SingularMatrix,
    determinant,
    render,
    root_bound,
    solve_linear,
)

UNKNOWNS = ("b1R", "R2", "Db1", "D2", "b2")


class SingularSystem(SingularMatrix):
    pass


class DegenerateTriangle(ValueError):
    pass


@dataclass(frozen=True)
class Discrepancy:
    """A printed formula disagreeing with the exact computation."""

    name: str
    where: str
    printed: str
    computed: str


class PrintedFormulaDiscrepancy(ValueError):
    def __init__(self, discrepancies: list[Discrepancy]):
        self.discrepancies = discrepancies
        super().__init__("; ".join(f"{x.name} at {x.where}: printed {x.printed}, computed {x.computed}" for x in discrepancies))


# ---------------------------------------------------------------------------
# printed data


def _poly(coeffs: list[str]) -> RationalPoly:
    return RationalPoly(Fraction(c) for c in coeffs)


@dataclass(frozen=True)
class PrintedForm:
    """factor * (X(d) x + Y(d) y + C(d)), optionally over P(d)."""

    factor: Fraction
    x: RationalPoly
    y: RationalPoly
    const: RationalPoly

    @classmethod
    def from_json(cls, obj: dict) -> PrintedForm:
        return cls(Fraction(obj.get("factor", "1")), _poly(obj["x"]), _poly(obj["y"]), _poly(obj["const"]))

    def coefficients(self, d: Number) -> tuple[Fraction, Fraction, Fraction]:
        f = self.factor
        return f * self.x(d), f * self.y(d), f * self.const(d)


@dataclass(frozen=True)
class PrintedData:
    P: RationalPoly
    matrix: tuple[tuple[RationalPoly, ...], ...]
    rhs: tuple[PrintedForm, ...]
    solution: dict
    scaled: dict
    vertices: dict
    superbound: dict
    cascade: dict


@lru_cache(maxsize=1)
def printed() -> PrintedData:
    raw = json.loads(resources.files("qcv.data").joinpath("conic_bundle_printed.json").read_text())
    frac = lambda obj: (_poly(obj["num"]), _poly(obj["den"]))  # noqa: E731
    return PrintedData(
        P=_poly(raw["P"]),
        matrix=tuple(tuple(_poly(e) for e in row) for row in raw["matrix"]),
        rhs=tuple(PrintedForm.from_json(r) for r in raw["rhs"]),
        solution={k: PrintedForm.from_json(v) for k, v in raw["solution"].items()},
        scaled={k: PrintedForm.from_json(v) for k, v in raw["scaled"].items()},
        vertices={k: (*frac(v), v["verbatim"]) for k, v in raw["vertices"].items()},
        superbound={k: frac(v) for k, v in raw["superbound"].items()},
        cascade=raw["cascade"],
    )


# the printed right-hand side carries +2x in its fourth entry; cutting the
# degree-two relation with L gives -2x (see derive_system)
_RHS4_X_CORRECTED = RationalPoly([-2])


# ---------------------------------------------------------------------------
# the system


def _rhs_forms(printed_rhs: bool) -> tuple[PrintedForm, ...]:
    forms = printed().rhs
    if printed_rhs:
        return forms
    r4 = forms[3]
    return forms[:3] + (PrintedForm(r4.factor, _RHS4_X_CORRECTED, r4.y, r4.const),) + forms[4:]


def build_matrix(d: Number) -> RationalMatrix:
    return RationalMatrix([[e(d) for e in row] for row in printed().matrix])


def build_system(d: Number, x: Number, y: Number, printed_rhs: bool = False) -> tuple[RationalMatrix, list[Fraction]]:
    """M and c at (d, x, y).  ``printed_rhs=True`` keeps the sign of the x
    term in c[4] exactly as printed; the default uses the derived sign."""
    c = []
    for f in _rhs_forms(printed_rhs):
        a, b, k = f.coefficients(d)
        c.append(a * x + b * y + k)
    return build_matrix(d), c


def P(d: Number) -> Fraction:
    """3d^3 - 27d^2 - 1520d + 18976."""
    return Fraction(3) * Fraction(d) ** 3 - 27 * Fraction(d) ** 2 - 1520 * Fraction(d) + 18976


def P_from_determinant(d: Number) -> Fraction:
    return -determinant(build_matrix(d)) / 2


# -- independent derivation of the system from intersection rules on X ------
#
# Classes on X: L, and pullbacks of b1, R, D (divisors on Y) and of B2 = c2(Y),
# E2 = e2 (points on Y, pulled back to curves).  Degrees of cubic monomials:
#   L^3 = d,  L^2 W = (4R - D).W,  L W W' = 2 W.W',  W W' W'' = 0,
#   L B2 = 2 b2,  L E2 = 2 e2,  W B2 = W E2 = 0.
# Numbers are linear forms over the unknowns, x, y, e2 and "1".


def _lin(**kw: Number) -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in kw.items() if v}


def _lin_add(a: dict, b: dict, scale: Fraction = Fraction(1)) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + scale * v
        if out[k] == 0:
            del out[k]
    return out


_Y_PAIRS = {
    ("b1", "b1"): "x", ("R", "b1"): "b1R", ("R", "R"): "R2",
    ("D", "b1"): "Db1", ("D", "D"): "D2", ("D", "R"): "y",
}


def _y_dot(u: str, w: str) -> dict:
    return {_Y_PAIRS[tuple(sorted((u, w)))]: Fraction(1)}


def _cycle_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2))
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _cycle(**terms: Number) -> dict:
    """Build a cycle from names like L_b1 (product) -> coefficient."""
    return {tuple(sorted(k.split("_"))): Fraction(v) for k, v in terms.items() if v}


def _degree(cycle: dict, d: Fraction) -> dict:
    total: dict = {}
    for mono, coef in cycle.items():
        k = mono.count("L")
        rest = [g for g in mono if g != "L"]
        weight = sum(2 if g in ("B2", "E2") else 1 for g in mono)
        if weight != 3:
            raise ValueError(f"{mono} is not a top-degree monomial")
        if "B2" in rest or "E2" in rest:
            val = _lin(b2=2) if "B2" in rest else _lin(e2=2)
            if k != 1:
                val = {}
        elif k == 3:
            val = _lin(**{"1": d})
        elif k == 2:
            w = rest[0]
            val = _lin_add({k_: 4 * v for k_, v in _y_dot("R", w).items()}, _y_dot("D", w), Fraction(-1))
        elif k == 1:
            val = {k_: 2 * v for k_, v in _y_dot(rest[0], rest[1]).items()}
        else:
            val = {}
        total = _lin_add(total, val, coef)
    return total


def derive_system(d: Number, n: int = 5) -> tuple[RationalMatrix, list[dict]]:
    """Derive M and c from the intersection rules above.

    Returns M and the right side as linear forms in x, y, 1 (after
    substituting e2 = (12R^2 + D^2 - 7y - d)/2).
    """
    d = Fraction(d)
    one = Fraction(1)
    L = _cycle(L=1)
    x1 = _cycle(L=1, b1=1, R=-1)
    x2 = _cycle(L_L=1, L_b1=1, L_R=-2, L_D=1, R_R=-2, R_b1=-1, D_R=1, B2=1, E2=1)
    cn = Fraction(n * n - n + 2, 2)
    sq = _cycle_mul(x1, x1)
    eq1 = {}
    for part, s in ((_cycle_mul(L, L), cn - d / 2), (_cycle_mul(x1, L), Fraction(-n)), (sq, one), (x2, -one)):
        for m, c in part.items():
            eq1[m] = eq1.get(m, Fraction(0)) + s * c
    rows = [_degree(_cycle_mul(eq1, _cycle(**{cut: 1}) if cut[0] != "-" else _cycle(**{cut[1:]: -1})), d) for cut in ("R", "-b1", "D", "L")]
    # degree-three relation; x3 = e(X) = 2 b2 - D^2 + D.b1
    L3 = _cycle_mul(_cycle_mul(L, L), L)
    terms = [
        (L3, Fraction(n**3 - 3 * n * n + 8 * n - 12, 6)),
        (_cycle_mul(x1, _cycle_mul(L, L)), Fraction(-n * n + n - 2, 2)),
        (_cycle_mul(sq, L), Fraction(n)),
        (_cycle_mul(x2, L), Fraction(-n)),
        (_cycle_mul(x1, x2), Fraction(2)),
        (_cycle_mul(sq, x1), -one),
    ]
    row5: dict = {}
    for cyc, s in terms:
        row5 = _lin_add(row5, _degree(cyc, d), s)
    row5 = _lin_add(row5, _lin(b2=2, D2=-1, Db1=1), -one)
    rows.append(row5)
    e2_sub = _lin(R2=6, D2=Fraction(1, 2), y=Fraction(-7, 2), **{"1": -d / 2})
    matrix, rhs = [], []
    for r in rows:
        coef = r.pop("e2", Fraction(0))
        r = _lin_add(r, e2_sub, coef)
        matrix.append([r.get(u, Fraction(0)) for u in UNKNOWNS])
        rhs.append({k: -r.get(k, Fraction(0)) for k in ("x", "y", "1")})
    return RationalMatrix(matrix), rhs


@dataclass(frozen=True)
class DerivationComparison:
    """printed M = T . derived M; ``residual`` = printed c - T . derived c
    as linear forms in (x, y, 1).  Nonzero entries localize print errors."""

    d: Fraction
    transform: RationalMatrix
    residual: list[dict]
    printed_rhs: bool

    @property
    def faulty_rows(self) -> list[int]:
        return [i + 1 for i, r in enumerate(self.residual) if any(r.values())]


def compare_with_derivation(d: Number, printed_rhs: bool = True) -> DerivationComparison:
    d = Fraction(d)
    Md, cd = derive_system(d)
    Mp = build_matrix(d)
    # T = Mp Md^{-1}: solve Md^T t_i = (row i of Mp)^T
    MdT = RationalMatrix([[Md[j, i] for j in range(5)] for i in range(5)])
    T = RationalMatrix([solve_linear(MdT, list(Mp.row(i))) for i in range(5)])
    residual = []
    for i, f in enumerate(_rhs_forms(printed_rhs)):
        a, b, k = f.coefficients(d)
        mixed = {s: sum((T[i, j] * cd[j][s] for j in range(5)), Fraction(0)) for s in ("x", "y", "1")}
        residual.append({"x": a - mixed["x"], "y": b - mixed["y"], "1": k - mixed["1"]})
    return DerivationComparison(d, T, residual, printed_rhs)


# ---------------------------------------------------------------------------
# solutions


@dataclass(frozen=True)
class ConicBundlePoint:
    d: int
    x: int
    y: int

    def __post_init__(self):
        if self.y < 0:
            raise ValueError("y = D.R must be non-negative")


@dataclass(frozen=True)
class SolutionVector:
    b1R: Fraction
    R2: Fraction
    Db1: Fraction
    D2: Fraction
    b2: Fraction

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.b1R, self.R2, self.Db1, self.D2, self.b2)

    def e2(self, d: Number, y: Number) -> Fraction:
        return (12 * self.R2 + self.D2 - 7 * Fraction(y) - Fraction(d)) / 2

    def e1D(self, y: Number) -> Fraction:
        # e1 = 3R - D
        return 3 * Fraction(y) - self.D2

    def g1(self, d: Number, y: Number) -> Fraction:
        return Fraction(d) / 2 - 2 * self.b1R + self.Db1 / 2 + 2 * self.R2 - Fraction(y) / 2


def solve_system(d: Number, x: Number, y: Number, printed_rhs: bool = False) -> SolutionVector:
    M, c = build_system(d, x, y, printed_rhs)
    try:
        return SolutionVector(*solve_linear(M, c))
    except SingularMatrix as exc:
        raise SingularSystem(f"M is singular at d={render(Fraction(d))}") from exc


def residual(d: Number, x: Number, y: Number, v: SolutionVector) -> list[Fraction]:
    M, c = build_system(d, x, y)
    return [a - b for a, b in zip(M.apply(v.as_tuple()), c)]


def printed_solution(d: Number, x: Number, y: Number) -> SolutionVector:
    p = printed().P(d)
    vals = []
    for name in UNKNOWNS:
        a, b, k = printed().solution[name].coefficients(d)
        vals.append((a * x + b * y + k) / p)
    return SolutionVector(*vals)


def solve_point(point: ConicBundlePoint | tuple, strict: bool = False) -> SolutionVector:
    """Exact solve; compared with the printed closed forms.

    Disagreements raise PrintedFormulaDiscrepancy when ``strict``; otherwise
    the matrix solution is returned (it is normative either way).
    """
    if not isinstance(point, ConicBundlePoint):
        point = ConicBundlePoint(*point)
    v = solve_system(point.d, point.x, point.y)
    if strict:
        found = _compare_vectors(point, v, printed_solution(point.d, point.x, point.y))
        if found:
            raise PrintedFormulaDiscrepancy(found)
    return v


def _compare_vectors(p: ConicBundlePoint, mine: SolutionVector, theirs: SolutionVector) -> list[Discrepancy]:
    where = f"(d,x,y)=({p.d},{p.x},{p.y})"
    return [
        Discrepancy(name, where, render(b), render(a))
        for name, a, b in zip(UNKNOWNS, mine.as_tuple(), theirs.as_tuple())
        if a != b
    ]


# affine structure: every quantity is affine in (x, y) at fixed d


@dataclass(frozen=True)
class AffineForm:
    """value(x, y) = ax * x + ay * y + c."""

    ax: Fraction
    ay: Fraction
    c: Fraction

    def __call__(self, x: Number, y: Number) -> Fraction:
        return self.ax * x + self.ay * y + self.c

    def scaled(self, k: Number) -> AffineForm:
        return AffineForm(self.ax * k, self.ay * k, self.c * k)


@lru_cache(maxsize=512)
def affine_forms(d: int) -> dict[str, AffineForm]:
    """b1R, R2, Db1, D2, b2, e2, e1D and g1 as affine forms in (x, y), from
    three exact solves of the system."""
    base = solve_system(d, 0, 0)
    vx = solve_system(d, 1, 0)
    vy = solve_system(d, 0, 1)

    def form(f) -> AffineForm:
        # f(v, y) evaluates a quantity on the solution v at height y
        c = f(base, 0)
        return AffineForm(f(vx, 0) - c, f(vy, 1) - c, c)

    out = {}
    for name in UNKNOWNS:
        out[name] = form(lambda v, y, name=name: getattr(v, name))
    out["e2"] = form(lambda v, y: v.e2(d, y))
    out["e1D"] = form(lambda v, y: v.e1D(y))
    out["g1"] = form(lambda v, y: v.g1(d, y))
    return out


def _printed_scaled(name: str, d: Number, x: Number, y: Number) -> Fraction:
    a, b, k = printed().scaled[name].coefficients(d)
    return a * x + b * y + k


def _dual(name: str, d: Number, x: Number, y: Number, computed: Fraction, strict: bool) -> Fraction:
    theirs = _printed_scaled(name, d, x, y)
    if computed != theirs and strict:
        raise PrintedFormulaDiscrepancy([Discrepancy(f"{name}*P", f"(d,x,y)=({d},{x},{y})", render(theirs), render(computed))])
    return computed


def e2_scaled(d: Number, x: Number, y: Number, strict: bool = True) -> Fraction:
    """e2 * P(d), reconstructed from the solution vector and checked against print."""
    v = solve_system(d, x, y)
    return _dual("e2", d, x, y, v.e2(d, y) * P(d), strict)


def e1D_scaled(d: Number, x: Number, y: Number, strict: bool = True) -> Fraction:
    v = solve_system(d, x, y)
    return _dual("e1D", d, x, y, v.e1D(y) * P(d), strict)


def genus_of_point(d: Number, x: Number, y: Number, strict: bool = True) -> Fraction:
    """g - 1 at (d, x, y)."""
    v = solve_system(d, x, y)
    g1 = v.g1(d, y)
    _dual("g1", d, x, y, g1 * P(d), strict)
    return g1


# ---------------------------------------------------------------------------
# triangle and superbound


@dataclass(frozen=True)
class FeasibleTriangle:
    d: int
    v1: tuple[Fraction, Fraction]
    v2: tuple[Fraction, Fraction]
    v3: tuple[Fraction, Fraction]
    e2_line: AffineForm
    e1D_line: AffineForm

    @property
    def slopes(self) -> tuple[Fraction, Fraction]:
        """dy/dx along the e2 = 0 and e1.D = 0 lines."""
        return -self.e2_line.ax / self.e2_line.ay, -self.e1D_line.ax / self.e1D_line.ay

    def x_interval(self, y: Number) -> tuple[Fraction, Fraction]:
        """Rational x-range inside the triangle at height y (may be empty)."""
        lo = -(self.e2_line.ay * y + self.e2_line.c) / self.e2_line.ax
        hi = -(self.e1D_line.ay * y + self.e1D_line.c) / self.e1D_line.ax
        return lo, hi

    def contains(self, x: Number, y: Number) -> bool:
        return y >= 0 and self.e2_line(x, y) >= 0 and self.e1D_line(x, y) >= 0

    def lattice_count(self) -> int:
        total = 0
        for y in range(0, floor(self.v3[1]) + 1):
            lo, hi = self.x_interval(y)
            total += max(0, floor(hi) - ceil(lo) + 1)
        return total


def triangle(d: int) -> FeasibleTriangle:
    """Region e2 >= 0, e1.D >= 0, y >= 0 (the lines scaled by P(d))."""
    if d < 20:
        raise ValueError("the triangle is used for d >= 20")
    f = affine_forms(d)
    p = P(d)
    a, b = f["e2"].scaled(p), f["e1D"].scaled(p)
    if a.ax == 0 or b.ax == 0:
        raise DegenerateTriangle(f"a boundary line is horizontal at d={d}")
    det = a.ax * b.ay - a.ay * b.ax
    if det == 0:
        raise DegenerateTriangle(f"the e2 and e1.D lines are parallel at d={d}")
    v1 = (-a.c / a.ax, Fraction(0))
    v2 = (-b.c / b.ax, Fraction(0))
    x3 = (-a.c * b.ay + a.ay * b.c) / det
    y3 = (-a.ax * b.c + b.ax * a.c) / det
    return FeasibleTriangle(d, v1, v2, (x3, y3), a, b)


def printed_vertex(name: str, d: Number) -> Fraction:
    num, den, _ = printed().vertices[name]
    return num(d) / den(d)


def x1_closed(d: Number) -> Fraction:
    d = Fraction(d)
    return d * (19 * d**3 - 843 * d**2 + 11728 * d - 49312) / (1792 * (d - 5))


def x2_closed(d: Number) -> Fraction:
    d = Fraction(d)
    return d * (d - 17) ** 2 * (d - 11) / (4 * (19 * d - 251))


def v3_closed(d: Number) -> tuple[Fraction, Fraction]:
    d = Fraction(d)
    return (
        d * (19 * d**3 - 919 * d**2 + 14428 * d - 72384) / (256 * (7 * d - 92)),
        d * (29 * d - 277) / (7 * d - 92),
    )


def superbound_printed(d: Number) -> tuple[Fraction, Fraction]:
    sb = printed().superbound
    return tuple(num(d) / den(d) for num, den in (sb["lo"], sb["hi"]))


def superbound(d: int, strict: bool = True) -> tuple[Fraction, Fraction]:
    """(lo, hi) for g - 1: the genus at the vertices v1 and v2."""
    t = triangle(d)
    g = affine_forms(d)["g1"]
    lo, hi = g(*t.v1), g(*t.v2)
    if strict:
        plo, phi = superbound_printed(d)
        found = [Discrepancy(n, f"d={d}", render(p), render(c)) for n, p, c in (("lo", plo, lo), ("hi", phi, hi)) if p != c]
        if found:
            raise PrintedFormulaDiscrepancy(found)
    return lo, hi


def genus_range(d: int) -> tuple[Fraction, Fraction]:
    """Exact min and max of g - 1 over the triangle (all three vertices).

    Differs from :func:`superbound` where the apex beats the e1.D base vertex,
    which happens for 20 <= d <= 30.
    """
    t = triangle(d)
    g = affine_forms(d)["g1"]
    vals = [g(*v) for v in (t.v1, t.v2, t.v3)]
    return min(vals), max(vals)


def lo_poly() -> tuple[RationalPoly, RationalPoly]:
    return printed().superbound["lo"]


def hi_poly() -> tuple[RationalPoly, RationalPoly]:
    return printed().superbound["hi"]


def k3_tail_gap(d: int) -> Fraction:
    """lo(d) - d^2/12; positive exactly when the k = 3 containment is violated."""
    return superbound(d, strict=False)[0] - Fraction(d * d, 12)


# ---------------------------------------------------------------------------
# degree cascade


def _max_degree(lhs_num: RationalPoly, lhs_den: RationalPoly, bound: RationalPoly, d_min: int) -> tuple[int | None, int]:
    """Largest even d >= d_min with lhs_num/lhs_den <= bound (lhs_den > 0 there).

    The scan stops at a Cauchy bound of lhs_den*bound - lhs_num, beyond
    which the sign is that of its leading coefficient.
    """
    q = lhs_den * bound - lhs_num
    if q.leading > 0:
        raise ValueError("the inequality holds for every large d")
    cap = max(ceil(root_bound(q)), d_min)
    best = None
    for d in range(d_min + d_min % 2, cap + 2, 2):
        if lhs_den(d) <= 0:
            raise ValueError(f"denominator not positive at d={d}")
        if q(d) >= 0:
            best = d
    return best, cap


def _bound_poly(kind: str, k: int) -> RationalPoly:
    d = RationalPoly.var()
    if kind == "contained":
        return d * d / (4 * k) + Fraction(k - 3, 2) * d
    return d * d / (2 * k) + Fraction(k - 4, 2) * d


@dataclass
class CascadeRow:
    case: str
    k: int | None
    max_d: int | None
    printed: int | None
    trail: str

    @property
    def agrees(self) -> bool:
        return self.max_d == self.printed


@dataclass
class Cascade:
    rows: list[CascadeRow] = field(default_factory=list)

    def by_case(self, case: str) -> CascadeRow:
        return next(r for r in self.rows if r.case == case)

    def contained(self) -> dict[int, int | None]:
        return {r.k: r.max_d for r in self.rows if r.case.startswith("contained")}


def degree_bound_cascade(d_min: int = 20) -> Cascade:
    lo_num, lo_den = lo_poly()
    hi_num, hi_den = hi_poly()
    pc = printed().cascade
    out = Cascade()
    best, cap = _max_degree(lo_num, lo_den, _bound_poly("notcontained", 11), d_min)
    out.rows.append(CascadeRow("notcontained", 11, best, pc["notcontained_k11"], f"lo(d) <= d^2/22 + 7d/2, scanned to {cap}"))
    printed_map = dict(zip(pc["contained_k"], pc["contained_bounds"]))
    for k in range(10, 2, -1):
        best, cap = _max_degree(lo_num, lo_den, _bound_poly("contained", k), d_min)
        out.rows.append(
            CascadeRow(
                f"contained_k{k}", k, best, printed_map.get(k),
                f"lo(d) <= d^2/{4 * k} + {render(Fraction(k - 3, 2))}d, scanned to {cap}; "
                f"printed position {pc['contained_k'].index(k) + 1} of the list",
            )
        )
    # containment in a surface of degree 2s (s = 2, 1): epas lower bound <= hi(d)
    d = RationalPoly.var()
    for s, case, key in ((2, "degree_four", "degree_four"), (1, "degree_two", "degree_two")):
        lower = d * d / (4 * s) - Fraction(3, 2) * d
        # lower(d) <= hi_num/hi_den  <=>  hi_num - hi_den*lower >= 0 (hi_den > 0 for d >= 14)
        q = hi_num - hi_den * lower
        cap = max(ceil(root_bound(q)), 14)
        best = None
        for dd in range(14, cap + 2, 2):
            if q(dd) >= 0:
                best = dd
        verdict = "contradiction with d >= %d" % d_min if best is None or best < d_min else f"d <= {best}"
        out.rows.append(CascadeRow(case, s, best, pc[key], f"d^2/{4 * s} - 3d/2 <= hi(d) for even d >= 14: {verdict}"))
    return out


def cascade_contradiction(row: CascadeRow, d_min: int = 20) -> bool:
    return row.max_d is None or row.max_d < d_min


def k3_containment_bound(d: int) -> Fraction:
    return contained_bound(d, 3)


def notcontained_k11(d: int) -> Fraction:
    return notcontained_bound(d, 11)
