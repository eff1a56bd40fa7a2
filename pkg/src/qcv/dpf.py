"""Restriction of the double point relations to test surfaces and fibers.

Conventions: x_i are the Chern classes of T_X, so x_1 = -K_X.  On a surface
S inside X with normal bundle N = N_{S/X},

    x_1|S = c1(T_S) + c1(N)
    x_2|S = c2(T_S) + c1(T_S) c1(N) + c2(N)
    n_2|S = (d/2) L|S^2

and the degree-two relation

    n_2 = (n^2-n+2)/2 L^2 - n x_1 L + x_1^2 - x_2

becomes an equation linear in d whose other coefficients may depend on an
auxiliary integer parameter (the degree a of L|S, or K_F^2 for a Del Pezzo
fiber).  :func:`solve_degree` finds every admissible (d, a) and derives on
its own the finite parameter window outside of which no solution can exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, floor
from typing import Callable

from .rational import Number, RationalPoly, render, root_bound
from .surfaces import F0, F2, P2, DivisorClass, Surface, normal_chern

Poly = RationalPoly


class InconsistentData(ValueError):
    pass


class UnboundedFamily(ValueError):
    """The equation admits infinitely many (d, a) or does not bound d."""


def _p(value: Number | RationalPoly) -> RationalPoly:
    return RationalPoly.coerce(value)


@dataclass(frozen=True)
class SurfaceRestrictionData:
    """Intersection numbers of a test surface S in X.  Every field is a
    polynomial in the auxiliary parameter (constant when there is none)."""

    n: int
    L2: RationalPoly
    c1T_L: RationalPoly
    c1T_sq: RationalPoly
    c2T: RationalPoly
    c1N_L: RationalPoly = field(default_factory=RationalPoly)
    c1N_sq: RationalPoly = field(default_factory=RationalPoly)
    c1N_c1T: RationalPoly = field(default_factory=RationalPoly)
    c2N: RationalPoly = field(default_factory=RationalPoly)
    normal_rank: int | None = None
    surface: str | None = None

    def __post_init__(self):
        for name in ("L2", "c1T_L", "c1T_sq", "c2T", "c1N_L", "c1N_sq", "c1N_c1T", "c2N"):
            object.__setattr__(self, name, _p(getattr(self, name)))
        if self.normal_rank is None:
            object.__setattr__(self, "normal_rank", self.n - 4)
        if self.n - 4 != self.normal_rank:
            raise InconsistentData(f"a surface in a codimension-two subvariety of Q^{self.n} has normal rank {self.n - 4}")
        if self.surface == "P2" and (self.c1T_sq != 9 or self.c2T != 3):
            raise InconsistentData("P^2 has c1^2 = 9 and c2 = 3")


@dataclass(frozen=True)
class DpfEquation:
    """``constant(a) + d_coefficient(a) * d = 0``."""

    constant: RationalPoly
    d_coefficient: RationalPoly
    param: str = "a"

    def degree_at(self, a: Number) -> Fraction | None:
        b = self.d_coefficient(a)
        if b == 0:
            return None
        return -self.constant(a) / b

    def format(self) -> str:
        a = self.param
        return f"{self.constant.format(a)} + ({self.d_coefficient.format(a)})*d = 0"

    def equivalent(self, other: DpfEquation) -> bool:
        """True when the two equations differ by a nonzero constant factor."""
        mine = (self.constant, self.d_coefficient)
        theirs = (other.constant, other.d_coefficient)
        ratio = None
        for p, q in zip(mine, theirs):
            for i in range(max(p.degree, q.degree) + 1):
                u = p.coeffs[i] if i <= p.degree else Fraction(0)
                v = q.coeffs[i] if i <= q.degree else Fraction(0)
                if (u == 0) != (v == 0):
                    return False
                if u:
                    r = u / v
                    if ratio is None:
                        ratio = r
                    elif r != ratio:
                        return False
        return ratio is not None


def dpf2_equation(data: SurfaceRestrictionData) -> DpfEquation:
    """The degree-two relation restricted to the test surface."""
    if data.normal_rank == 1 and not data.c2N.is_zero():
        raise InconsistentData("a line bundle normal to a divisor has c2 = 0")
    n = data.n
    cn = Fraction(n * n - n + 2, 2)
    x1_L = data.c1T_L + data.c1N_L
    x1_sq = data.c1T_sq + 2 * data.c1N_c1T + data.c1N_sq
    x2 = data.c2T + data.c1N_c1T + data.c2N
    constant = cn * data.L2 - n * x1_L + x1_sq - x2
    return DpfEquation(constant, -data.L2 / 2)


@dataclass(frozen=True)
class DegreeConstraints:
    param_min: int = 1
    param_max: int | None = None
    d_min: int = 2
    d_max: int | None = None
    even: bool = True

    def admissible(self, d: Fraction) -> bool:
        if d.denominator != 1:
            return False
        d = int(d)
        if d < self.d_min or (self.d_max is not None and d > self.d_max):
            return False
        return not (self.even and d % 2)


@dataclass(frozen=True)
class DegreeSolutions:
    solutions: tuple[tuple[int, int | None], ...]
    param_window: tuple[int, int] | None
    degree_cap: int | None
    trail: tuple[str, ...]

    @property
    def degrees(self) -> set[int]:
        return {d for d, _ in self.solutions}


def _nearest_admissible_gap(limit: Fraction, c: DegreeConstraints) -> Fraction:
    """Distance from ``limit`` to the closest admissible degree other than itself."""
    step = 2 if c.even else 1
    candidates = []
    low = floor(limit)
    while step == 2 and low % 2:
        low -= 1
    if low == limit:
        low -= step
    high = ceil(limit)
    while step == 2 and high % 2:
        high += 1
    if high == limit:
        high += step
    high = max(high, c.d_min + (c.d_min % 2 if c.even else 0))
    for e in (low, high):
        if e >= c.d_min and (c.d_max is None or e <= c.d_max):
            candidates.append(abs(Fraction(e) - limit))
    return min(candidates) if candidates else Fraction(1)


def _abs_sum(p: RationalPoly, upto: int | None = None) -> Fraction:
    cs = p.coeffs if upto is None else p.coeffs[:upto]
    return sum((abs(c) for c in cs), Fraction(0))


def _parameter_cap(num: RationalPoly, den: RationalPoly, c: DegreeConstraints, trail: list[str]) -> tuple[int, Fraction | None, int]:
    """Largest parameter value worth scanning for d = num/den.

    Returns (cap, limit, side): ``limit`` is lim d(a) (None when d -> -inf)
    and ``side`` the sign of d - limit for large a.
    """
    if num.degree > den.degree:
        if num.leading / den.leading > 0:
            raise UnboundedFamily(f"d grows without bound along the family ({num.format()})/({den.format()})")
        # d -> -infinity: past the roots of (num - d_min*den)*den, d < d_min
        q = (num - c.d_min * den) * den
        cap = ceil(root_bound(q))
        trail.append(f"d -> -infinity as the parameter grows; d < {c.d_min} beyond {cap}")
        return max(cap, c.param_min), None, -1
    limit = num.leading / den.leading if num.degree == den.degree else Fraction(0)
    rem = num - limit * den
    if rem.is_zero():
        if c.admissible(limit):
            raise UnboundedFamily(f"d = {render(limit)} for every parameter value")
        trail.append(f"d is constantly {render(limit)}, not admissible")
        return c.param_min - 1, limit, 0
    gap = _nearest_admissible_gap(limit, c)
    # for a >= 1: |rem(a)| <= S_r a^(m-1) and |den(a)| >= a^(m-1) (|b_m| a - S_b)
    lead = abs(den.leading)
    bound = (_abs_sum(rem) / gap + _abs_sum(den, den.degree)) / lead
    cap = max(ceil(bound), ceil(root_bound(rem)), 1)
    side = 1 if rem.leading * den.leading > 0 else -1
    trail.append(
        f"d -> {render(limit)} from {'above' if side > 0 else 'below'}; "
        f"|d - {render(limit)}| < {render(gap)} for parameter > {cap}"
    )
    return max(cap, c.param_min), limit, side


def solve_degree(eq: DpfEquation, constraints: DegreeConstraints | None = None) -> DegreeSolutions:
    """Every admissible (d, a) solving the equation.

    Parameter-free equations give pairs (d, None).  The parameter window is
    derived from the asymptotics of d(a) unless ``param_max`` is given.
    """
    c = constraints or DegreeConstraints()
    trail: list[str] = [eq.format()]
    const, dco = eq.constant, eq.d_coefficient
    if const.is_constant() and dco.is_constant():
        k, b = const.constant_value(), dco.constant_value()
        if b == 0:
            if k == 0:
                raise UnboundedFamily("the equation is 0 = 0")
            trail.append("d does not occur and the equation is false")
            return DegreeSolutions((), None, None, tuple(trail))
        d = -k / b
        trail.append(f"d = {render(d)}")
        sols = ((int(d), None),) if c.admissible(d) else ()
        cap = int(d) if sols else None
        return DegreeSolutions(sols, None, cap, tuple(trail))

    num, den = -const, dco
    if c.param_max is not None:
        hi, limit, side = c.param_max, None, 0
        trail.append(f"parameter restricted to [{c.param_min}, {hi}]")
    else:
        hi, limit, side = _parameter_cap(num, den, c, trail)
    sols = []
    values = []
    for a in range(c.param_min, hi + 1):
        if den(a) == 0:
            if num(a) == 0:
                raise UnboundedFamily(f"every d solves the equation at parameter {a}")
            continue
        d = num(a) / den(a)
        values.append(d)
        if c.admissible(d):
            sols.append((int(d), a))
    cap = _degree_cap(values, limit, side, c)
    if cap is not None:
        trail.append(f"d <= {cap}")
    trail.append("solutions: " + (", ".join(f"(d={d}, {eq.param}={a})" for d, a in sols) or "none"))
    return DegreeSolutions(tuple(sols), (c.param_min, hi), cap, tuple(trail))


def _degree_cap(values: list[Fraction], limit: Fraction | None, side: int, c: DegreeConstraints) -> int | None:
    """Largest admissible degree not exceeding sup d(a) over the parameter range."""
    sup = max(values) if values else None
    strict = False
    if limit is not None and side != 0:
        if sup is None or limit > sup or (limit == sup and side < 0):
            sup, strict = limit, side < 0
        if side > 0:
            # the tail overshoots the limit by less than the admissible gap
            gap = _nearest_admissible_gap(limit, c)
            if sup is None or limit + gap > sup:
                sup, strict = limit + gap, True
    if sup is None:
        return None
    top = floor(sup)
    if strict and top == sup:
        top -= 1
    if c.even and top % 2:
        top -= 1
    return top if top >= c.d_min else None


# ---------------------------------------------------------------------------
# preset catalog


@dataclass(frozen=True)
class FiberPreset:
    name: str
    citation: str
    data: SurfaceRestrictionData
    expected_degrees: tuple[tuple[int, int | None], ...]
    constraints: DegreeConstraints = DegreeConstraints()
    param: str = "a"
    derivation: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.expected_degrees:
            raise ValueError("expected_degrees must be nonempty")

    def equation(self) -> DpfEquation:
        return replace(dpf2_equation(self.data), param=self.param)

    def solve(self) -> DegreeSolutions:
        return solve_degree(self.equation(), self.constraints)

    def matches(self) -> bool:
        return set(self.solve().solutions) == set(self.expected_degrees)


def restriction_from_classes(
    n: int,
    surface: Surface,
    L: DivisorClass,
    normal: list[DivisorClass] | None = None,
    normal_c1: DivisorClass | None = None,
    normal_c2: Number | RationalPoly = 0,
) -> SurfaceRestrictionData:
    """Resolve divisor classes on a test surface to the intersection numbers."""
    if normal is not None:
        c1N, c2N = normal_chern(normal)
        rank = len(normal)
    else:
        c1N, c2N, rank = normal_c1 or surface.zero(), _p(normal_c2), n - 4
    c1T = surface.c1
    return SurfaceRestrictionData(
        n=n,
        L2=L.dot(L),
        c1T_L=c1T.dot(L),
        c1T_sq=c1T.dot(c1T),
        c2T=_p(surface.euler),
        c1N_L=c1N.dot(L),
        c1N_sq=c1N.dot(c1N),
        c1N_c1T=c1N.dot(c1T),
        c2N=c2N,
        normal_rank=rank,
        surface=surface.name,
    )


def divisor_data(
    surface: Surface,
    normal: DivisorClass,
    adjoint: int | None = None,
    L: DivisorClass | None = None,
) -> tuple[SurfaceRestrictionData, list[str]]:
    """Data of a divisor D of a threefold X on Q^5 with O_D(D) = ``normal``.

    When ``adjoint`` = c is given, (K_X + cL)|D is trivial; with adjunction
    K_X|D = K_D - D|D this fixes L|D = (D|D - K_D)/c.  If ``L`` is also given,
    the two must agree.
    """
    kx = surface.K - normal
    notes = [f"K_X|D = K_D - D|D = {kx.format()}"]
    if adjoint is not None:
        derived = (-kx) / adjoint
        if not derived.is_integral():
            raise InconsistentData(f"(K_X + {adjoint}L)|D trivial forces a non-integral L|D = {derived.format()}")
        if L is not None and (L - derived).coeffs != tuple(RationalPoly() for _ in L.coeffs):
            raise InconsistentData(f"L|D = {L.format()} contradicts adjunction, which gives {derived.format()}")
        L = derived
        notes.append(f"(K_X + {adjoint}L)|D trivial gives L|D = {L.format()}")
    if L is None:
        raise ValueError("L|D must be given or forced by an adjoint condition")
    return restriction_from_classes(5, surface, L, normal=[normal]), notes


def _delpezzo_surface_fiber() -> SurfaceRestrictionData:
    # F a Del Pezzo surface of degree D = K_F^2 with K_F = -L_F, c2 = 12 - D
    D = RationalPoly.var()
    return SurfaceRestrictionData(n=5, L2=D, c1T_L=D, c1T_sq=D, c2T=12 - D)


def _build_catalog() -> list[FiberPreset]:
    a = RationalPoly.var()
    h = P2.cls(1)
    presets: list[FiberPreset] = []

    def add(name, citation, data, expected, constraints=DegreeConstraints(), param="a", notes=()):
        presets.append(FiberPreset(name, citation, data, tuple(expected), constraints, param, tuple(notes)))

    data, notes = divisor_data(P2, P2.cls(-1), adjoint=2)
    add("numericaldpf_main", "exceptional P^2 with O(-1), (K_X+2L)|D trivial", data, [(10, None)], notes=notes)

    # n = 6: D = P^3 with O(-1), (K_X + 3L)|D trivial, so L|D = O(1); test on a plane of D,
    # whose normal bundle in X is O(1) + O(-1)
    add(
        "numericaldpf_main_n6",
        "exceptional P^3 with O(-1) on Q^6, cut with a plane",
        restriction_from_classes(6, P2, h, normal=[h, -h]),
        [(10, None)],
        notes=("K_X|D = K_D - D|D = -3h, so (K_X+3L)|D trivial gives L|D = h",),
    )
    for name, normal, adjoint, expected in (
        ("numericaldpf_1", P2.cls(-2), 1, 20),
        ("numericaldpf_2", P2.cls(-1), 1, 14),
    ):
        data, notes = divisor_data(P2, normal, adjoint=adjoint)
        add(name, f"(P^2, O({normal.coeffs[0].constant_value()})), (K_X+L)|D trivial", data, [(expected, None)], notes=notes)

    # F~_2 is taken numerically as F_2: G = K/2 = -E - 2f, G^2 = 2, L.G = -2
    data, notes = divisor_data(F2, F2.K / 2, adjoint=1)
    add("numericaldpf_3", "(F~_2, G) with 2G = K_D, (K_X+L)|D trivial", data, [(14, None)], notes=notes)
    data, notes = divisor_data(F0, F0.K / 2, adjoint=1)
    add("numericaldpf_4", "(F_0, G) with 2G = K_D, (K_X+L)|D trivial", data, [(14, None)], notes=notes)

    # plane S in a fourfold on Q^6 with L|S = O(1) and N = Omega(1): c(N) = 1/(1+h)
    add(
        "scroll_plane_on_Q6",
        "S = P^2, L|S = O(1), N_{S,X} = T*(1) on Q^6",
        restriction_from_classes(6, P2, h, normal_c1=-h, normal_c2=1),
        [(14, None)],
    )

    data, notes = divisor_data(P2, P2.cls(-1), L=a * h)
    add("mori_1", "(P^2, O(-1)), L|D = O(a)", data, [(10, 1), (14, 2)], notes=notes)
    data, notes = divisor_data(P2, P2.cls(-2), L=a * h)
    add("mori_2", "(P^2, O(-2)), L|D = O(a)", data, [(8, 1), (16, 2)], notes=notes)
    G2 = F2.K / 2
    data, notes = divisor_data(F2, G2, adjoint=1, L=-G2)
    add("mori_4", "(F~_2, G), L|D = -G", data, [(14, None)], notes=notes)

    Lq = F0.cls(1, 1)
    add(
        "quadric_surface_fiber_n5",
        "fiber Q^2 of a quadric bundle over a curve on Q^5",
        restriction_from_classes(5, F0, Lq, normal=[F0.zero()]),
        [(6, None)],
    )
    add(
        "quadric_threefold_fiber_n6",
        "fiber Q^3 of a quadric fibration over a curve on Q^6, cut with a hyperplane",
        restriction_from_classes(6, F0, Lq, normal=[Lq, F0.zero()]),
        [(6, None)],
    )
    add(
        "quadric_fiber_over_surface_n6",
        "fiber Q^2 of a quadric fibration over a surface on Q^6",
        restriction_from_classes(6, F0, Lq, normal=[F0.zero(), F0.zero()]),
        [(12, None)],
    )
    add(
        "veronese_fiber_n5",
        "fiber (P^2, O(2)) of a Veronese bundle on Q^5",
        restriction_from_classes(5, P2, 2 * h, normal=[P2.zero()]),
        [(10, None)],
    )
    # blown-up curve on a fourfold of Q^6: fiber P^2, N = O + O(-1), L|F = O(a)
    add(
        "blowup_plane_in_fourfold",
        "fiber of the blow-up of a curve on Q^6",
        restriction_from_classes(6, P2, a * h, normal=[P2.zero(), -h]),
        [(16, 1), (22, 2)],
    )
    add(
        "delpezzo_surface_fiber",
        "general fiber of a Del Pezzo fibration over a curve on Q^5, Delta = K_F^2",
        _delpezzo_surface_fiber(),
        [(8, 3), (10, 4), (12, 6)],
        DegreeConstraints(param_min=3, param_max=9),
        param="Delta",
    )
    return presets


_CATALOG: list[FiberPreset] | None = None


def preset_catalog() -> list[FiberPreset]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return list(_CATALOG)


def preset(name: str) -> FiberPreset:
    for p in preset_catalog():
        if p.name == name:
            return p
    raise KeyError(f"unknown preset {name!r}")


def preset_fixture(p: FiberPreset) -> dict:
    """JSON-ready description of a preset and its resolved numbers."""
    fields = ("L2", "c1T_L", "c1T_sq", "c2T", "c1N_L", "c1N_sq", "c1N_c1T", "c2N")
    return {
        "name": p.name,
        "citation": p.citation,
        "n": p.data.n,
        "surface": p.data.surface,
        "param": p.param,
        "data": {f: getattr(p.data, f).format(p.param) for f in fields},
        "equation": p.equation().format(),
        "expected_degrees": [[d, a] for d, a in p.expected_degrees],
        "derivation": list(p.derivation),
    }


# ---------------------------------------------------------------------------
# the degree-three relation on threefold fibers, and the Veronese parity test


@dataclass(frozen=True)
class ThreefoldFiberChernData:
    """Chern numbers of a threefold fiber F (x_1 = c1(F) = -K_F)."""

    L3: Fraction
    c1_L2: Fraction
    c1sq_L: Fraction
    c1cube: Fraction
    c1c2: Fraction
    x3_expected: Fraction
    c2_L: Fraction | None = None
    name: str = ""


def delpezzo_threefold_fiber(name: str, euler: int, degree: int = 6) -> ThreefoldFiberChernData:
    """Del Pezzo threefold with K_F = -2L and L^3 = degree (chi(O_F) = 1)."""
    L3 = Fraction(degree)
    return ThreefoldFiberChernData(
        L3=L3, c1_L2=2 * L3, c1sq_L=4 * L3, c1cube=8 * L3, c1c2=Fraction(24),
        x3_expected=Fraction(euler), c2_L=Fraction(12), name=name,
    )


@dataclass(frozen=True)
class X3Check:
    forced: Fraction
    expected: Fraction
    c2_L: Fraction

    @property
    def contradiction(self) -> bool:
        return self.forced != self.expected


def dpf3_x3_forced(data: ThreefoldFiberChernData, d: int, n: int = 6) -> X3Check:
    """x_3(F) forced by the degree-three relation on a fiber over a curve.

    The normal bundle of F is trivial, so the x_i restrict to the Chern
    classes of F.  c2.L is first recovered from the degree-two relation dotted
    with F.L, which is where d enters; it must agree with ``data.c2_L`` when
    that is provided.
    """
    if d % 2:
        raise ValueError("d must be even")
    cn = Fraction(n * n - n + 2, 2)
    c2_L = cn * data.L3 - n * data.c1_L2 + data.c1sq_L - Fraction(d, 2) * data.L3
    if data.c2_L is not None and data.c2_L != c2_L:
        raise InconsistentData(f"c2.L = {render(data.c2_L)} but the degree-two relation at d={d} needs {render(c2_L)}")
    forced = (
        Fraction(n**3 - 3 * n * n + 8 * n - 12, 6) * data.L3
        + Fraction(-n * n + n - 2, 2) * data.c1_L2
        + n * (data.c1sq_L - c2_L)
        + 2 * data.c1c2
        - data.c1cube
    )
    return X3Check(forced, data.x3_expected, c2_L)


def veronese_mod4_check(d: int) -> bool:
    """On a surface section L = -2K_S + (pullback of a divisor from the curve),
    so d = L^2 = 4K_S^2 - 4K_S.M is divisible by 4."""
    return d % 4 == 0


def mori_3_bound() -> tuple[int, list[tuple[int, int, int]]]:
    """(F_0, G) with L|D = pE + qf, p, q >= 1.

    The restricted relation reads (22 - d) p q = 5(p + q) - 2; the right side
    is positive, hence d <= 20.  Returns that bound together with the
    solutions (d, p, q), p <= q, found in the window where they can occur.
    """
    sols = []
    # (22 - d) pq >= 2 when d <= 20, so pq <= 5(p + q) - 2 bounds p and q
    for p in range(1, 11):
        for q in range(p, 200):
            rhs = 5 * (p + q) - 2
            if 2 * p * q > rhs:
                break
            if rhs % (p * q) == 0:
                d = 22 - rhs // (p * q)
                if d >= 2 and d % 2 == 0:
                    sols.append((d, p, q))
    return 20, sols


def mori_3_equation() -> Callable[[int, int], DpfEquation]:
    def build(p: int, q: int) -> DpfEquation:
        data, _ = divisor_data(F0, F0.K / 2, L=F0.cls(p, q))
        return dpf2_equation(data)

    return build
