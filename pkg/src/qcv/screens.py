"""Finite Diophantine screens on degrees and invariants.

Each screen either solves a small polynomial equation exactly or runs an
exhaustive search over a window whose finiteness is argued in its docstring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complete_intersection import CompleteIntersection
from .genus import castelnuovo_p4
from .invariants import Surface4Invariants, surface_k2
from .rational import RationalPoly, integer_roots, render


class NoSolution(ValueError):
    def __init__(self, message: str, trail: list[str]):
        super().__init__(message)
        self.trail = trail


class MultipleSolutions(ValueError):
    def __init__(self, message: str, trail: list[str]):
        super().__init__(message)
        self.trail = trail


def _eq3_in_d(k2: RationalPoly, g1: RationalPoly, chi: RationalPoly) -> RationalPoly:
    """2K^2 - (d^2/2 - 3d - 8(g-1) + 12 chi) as a polynomial in d."""
    d = RationalPoly.var()
    return 2 * k2 - (d * d / 2 - 3 * d - 8 * g1 + 12 * chi)


def del_pezzo_variety_degrees() -> set[int]:
    """Degrees of Del Pezzo threefolds on Q^5: the surface section has
    K_S = -L_S, so K^2 = d, g = 1 and chi = 1."""
    d = RationalPoly.var()
    poly = _eq3_in_d(d, RationalPoly(), RationalPoly.const(1))
    return {r for r in integer_roots(poly) if r > 0 and r % 2 == 0}


def del_pezzo_variety_polynomial() -> RationalPoly:
    d = RationalPoly.var()
    return -_eq3_in_d(d, RationalPoly(), RationalPoly.const(1))


def mukai_polynomial() -> RationalPoly:
    """K3 surface sections: K^2 = 0, chi = 2, g - 1 = d/2."""
    d = RationalPoly.var()
    return -2 * _eq3_in_d(RationalPoly(), d / 2, RationalPoly.const(2))


def mukai_degrees() -> set[tuple[int, int]]:
    return {(r, r // 2 + 1) for r in integer_roots(mukai_polynomial()) if r > 0 and r % 2 == 0}


# ---------------------------------------------------------------------------
# Fano threefolds


@dataclass(frozen=True)
class FanoWitness:
    """lambda = L.K^2, mu = -L^2.K/2, minus_k3 = -K^3."""

    lam: int
    mu: int
    minus_k3: int

    def __post_init__(self):
        if self.lam < 1 or self.mu < 1:
            raise ValueError("lambda and mu must be positive")
        if not 1 <= self.minus_k3 <= 64:
            raise ValueError("-K^3 must lie in [1, 64]")


MAX_MINUS_K3 = 64


def fano_relation(d: int, lam: int, mu: int) -> int:
    """-K^3 forced by the degree-two relation cut with K_X (using x1 x2 = 24):
    -K^3 = (d - 22) mu + 5 lambda + 24."""
    return (d - 22) * mu + 5 * lam + 24


def fano_threefold_feasible(d: int) -> tuple[bool, list[FanoWitness]]:
    """Exhaustive search for (lambda, mu, -K^3) satisfying the relation above
    and the Hodge inequality 2 mu (-K^3) <= lambda^2.

    The window is finite: mu = d - g + 1 <= d + 1 since g >= 0, and for fixed
    mu the relation with -K^3 <= 64 bounds lambda.
    """
    if d < 2 or d % 2:
        raise ValueError("d must be even and at least 2")
    witnesses = []
    for mu in range(1, d + 2):
        top = (MAX_MINUS_K3 - 24 - (d - 22) * mu) // 5
        for lam in range(1, top + 1):
            k3 = fano_relation(d, lam, mu)
            if 1 <= k3 <= MAX_MINUS_K3 and 2 * mu * k3 <= lam * lam:
                witnesses.append(FanoWitness(lam, mu, k3))
    return bool(witnesses), witnesses


# ---------------------------------------------------------------------------
# Del Pezzo fibrations over curves


@dataclass(frozen=True)
class FiberWitness:
    """Numbers on a Del Pezzo fiber F: K_F^2, K_F.L_F and L_F^2."""

    k2: int
    kl: int
    l2: int


def fiber_relation_residual(d: int, k2: int, kl: int, l2: int) -> Fraction:
    """(d/2 - 11) L^2 - (2K^2 - 12 + 5 K.L); zero on an admissible fiber."""
    return Fraction(d - 22, 2) * l2 - (2 * k2 - 12 + 5 * kl)


def _fiber_ok(k2: int, kl: int, l2: int) -> bool:
    # Hodge index on F, and K.L + L^2 = 2p_a - 2 is even
    return l2 >= 1 and kl <= -1 and l2 * k2 <= kl * kl and (l2 + kl) % 2 == 0


def fiber_witnesses(d: int, kl_floor: int = -200) -> list[FiberWitness]:
    """Solutions with K_F^2 in [1, 9], kl_floor <= K_F.L <= -1 and L^2 >= 1.

    For d >= 24 the right side 2K^2 - 12 + 5K.L is at most 1, so only
    K.L = -1 can occur and the search is complete.  For d = 22, L^2 drops
    out and the relation 2K^2 - 12 + 5K.L = 0 is tested for every K^2 on its
    own (L^2 = 1 stands in for the free value).
    """
    out = []
    for k2 in range(1, 10):
        for kl in range(-1, kl_floor - 1, -1):
            rhs = 2 * k2 - 12 + 5 * kl
            if d == 22:
                if rhs == 0 and _fiber_ok(k2, kl, 1):
                    out.append(FiberWitness(k2, kl, 1))
                continue
            den = Fraction(d - 22, 2)
            l2 = rhs / den
            if l2.denominator != 1 or l2 < 1:
                continue
            if _fiber_ok(k2, kl, int(l2)):
                out.append(FiberWitness(k2, kl, int(l2)))
    return out


@dataclass
class FibrationBound:
    bound: int
    trail: list[str] = field(default_factory=list)
    witness: FiberWitness | None = None


FANO_FIBRATION_BOUND_N6 = 30


def fano_fibration_bound(n: int) -> FibrationBound:
    if n == 6:
        return FibrationBound(FANO_FIBRATION_BOUND_N6, ["recorded constant, no derivation"])
    if n != 5:
        raise ValueError("n must be 5 or 6")
    trail = [
        "on a fiber: (d/2 - 11) L^2 = 2K^2 - 12 + 5K.L with K^2 <= 9, K.L <= -1",
        "right side <= 1, so d/2 - 11 <= 1 whenever L^2 >= 1: d <= 24",
    ]
    for d in (24, 22):
        sols = fiber_witnesses(d)
        trail.append(f"d={d}: " + ("solutions " + repr(sols) if sols else "no admissible fiber"))
        if sols:
            return FibrationBound(d, trail, sols[0])
    # the d = 24 sub-case: K.L = -1, L^2 = 1 is excluded by Hodge index (K^2 = 9 > 1)
    trail.append("d=24 forces L^2 = -K.L = 1 and 2K^2 = 18, so K^2 = 9 > (K.L)^2/L^2 = 1")
    for d in range(20, 1, -2):
        sols = fiber_witnesses(d)
        if sols:
            w = max(sols, key=lambda s: (s.k2, s.kl))
            trail.append(f"d={d}: witness K^2={w.k2}, K.L={w.kl}, L^2={w.l2}")
            return FibrationBound(d, trail, w)
    raise NoSolution("no admissible degree", trail)


def fano_fibration_max_degree(n: int) -> int:
    return fano_fibration_bound(n).bound


# ---------------------------------------------------------------------------
# degree-12 Del Pezzo fibrations and surfaces of P^4


def delpezzo_fiber_degree(d: int) -> Fraction:
    """K_F^2 of the fiber of a Del Pezzo fibration over a curve: 24/(16 - d)."""
    if d >= 16:
        raise ValueError("no Del Pezzo fiber for d >= 16")
    return Fraction(24, 16 - d)


@dataclass(frozen=True)
class DelPezzoFibrationSolution:
    d: int
    g: int
    chi_OS: int
    p_g: int
    q: int
    base_genus: int

    def __post_init__(self):
        if self.chi_OS != 1 - self.q + self.p_g:
            raise ValueError("chi(O_S) must equal 1 - q + p_g")
        if self.base_genus != self.q:
            raise ValueError("the base genus equals q(S)")


def socrelle_pq(d: int, g: int, chi: int, delta: Fraction) -> tuple[Fraction, Fraction]:
    """(p_g, q) from 2g - 2 - d = (p_g + q - 1) Delta and chi = 1 - q + p_g."""
    s = Fraction(2 * g - 2 - d) / delta + 1
    diff = chi - 1
    return (s + diff) / 2, (s - diff) / 2


def delpezzo_chi_relation(d: int) -> tuple[Fraction, Fraction, Fraction]:
    """Surface section of a Del Pezzo fibration: K_S is pulled back from the
    base curve, so K_S^2 = 0.  Returns (a, b, c) with a (g-1) + b chi = c."""
    g1 = Fraction(surface_k2(Surface4Invariants(d, 1, 0)))
    slope_g = Fraction(surface_k2(Surface4Invariants(d, 2, 0))) - g1
    slope_chi = Fraction(surface_k2(Surface4Invariants(d, 1, 1))) - g1
    # K^2 = g1 + slope_g (g-1) + slope_chi chi = 0
    return slope_g, slope_chi, -g1


def resolve_delpezzo_fibration_invariants(d: int = 12, genus_cap: int | None = None) -> tuple[DelPezzoFibrationSolution, list[str]]:
    if d != 12:
        raise ValueError("only d = 12 remains to be resolved")
    cap = castelnuovo_p4(d) if genus_cap is None else genus_cap
    delta = delpezzo_fiber_degree(d)
    a, b, c = delpezzo_chi_relation(d)
    trail = [f"K_S^2 = 0: {render(a)}(g-1) + {render(b)} chi = {render(c)}", f"g <= {cap}", f"K_F^2 = {render(delta)}"]
    candidates = []
    for g in range(0, cap + 1):
        chi = (c - a * (g - 1)) / b
        if chi.denominator == 1 and chi >= 0:
            candidates.append((g, int(chi)))
    trail.append("candidates (g, chi): " + ", ".join(f"({g}, {x})" for g, x in candidates))
    survivors = []
    for g, chi in candidates:
        p_g, q = socrelle_pq(d, g, chi, delta)
        if p_g.denominator != 1 or q.denominator != 1 or p_g < 0 or q < 0:
            trail.append(f"(g, chi) = ({g}, {chi}): p_g = {render(p_g)}, q = {render(q)} rejected")
            continue
        trail.append(f"(g, chi) = ({g}, {chi}): p_g = {p_g}, q = {q}")
        survivors.append(DelPezzoFibrationSolution(d, g, chi, int(p_g), int(q), int(q)))
    if not survivors:
        raise NoSolution("no admissible invariants", trail)
    if len(survivors) > 1:
        raise MultipleSolutions(f"{len(survivors)} admissible invariant sets", trail)
    return survivors[0], trail


def p4_surface_dpf(d: int, g: int, k2: Fraction, chi: Fraction) -> Fraction:
    """Double point formula of a smooth surface in P^4:
    d^2 - 10d - 5 H.K - 2K^2 + 12 chi, with H.K = 2g - 2 - d."""
    return Fraction(d * d - 10 * d - 5 * (2 * g - 2 - d)) - 2 * k2 + 12 * chi


@dataclass
class NotInP4Verdict:
    d: int
    excluded: bool
    g: Fraction
    chi: Fraction
    trail: list[str]


def notinp4_check(d: int) -> NotInP4Verdict:
    """Could the surface section of a Del Pezzo fibration of degree d lie in P^4?

    With K_S^2 = 0 the P^4 double point formula and the Q^4 relation are two
    linear equations in (g - 1, chi); the unique solution must be integral and
    consistent with p_g + q from the fiber degree.
    """
    if d not in (8, 10, 12):
        raise ValueError("d must be 8, 10 or 12")
    # P^4 formula: -10 (g-1) + 12 chi = -(d^2 - 10d + 5d)
    # Q^4 relation (K^2 = 0): -8 (g-1) + 12 chi = -(d^2/2 - 3d)
    a1, b1, c1 = Fraction(-10), Fraction(12), Fraction(-(d * d - 5 * d))
    a2, b2, c2 = Fraction(-8), Fraction(12), -(Fraction(d * d, 2) - 3 * d)
    det = a1 * b2 - a2 * b1
    g1 = (c1 * b2 - c2 * b1) / det
    chi = (a1 * c2 - a2 * c1) / det
    g = g1 + 1
    trail = [f"d={d}: g = {render(g)}, chi = {render(chi)}"]
    if g.denominator != 1 or chi.denominator != 1:
        trail.append("non-integer invariants")
        return NotInP4Verdict(d, True, g, chi, trail)
    p_g, q = socrelle_pq(d, int(g), int(chi), delpezzo_fiber_degree(d))
    trail.append(f"p_g = {render(p_g)}, q = {render(q)}")
    excluded = p_g.denominator != 1 or q.denominator != 1 or p_g < 0 or q < 0
    trail.append("inconsistent" if excluded else "consistent")
    return NotInP4Verdict(d, excluded, g, chi, trail)


# ---------------------------------------------------------------------------
# (P^4, O(2)) and (Q^3, O(2))


@dataclass
class SectionCheck:
    name: str
    d: int
    g: int
    chi: Fraction
    k2_actual: Fraction
    k2_forced: Fraction

    @property
    def excluded(self) -> bool:
        return self.k2_actual != self.k2_forced


def veronese_pair_checks() -> list[SectionCheck]:
    """Surface sections of (P^4, O(2)) and (Q^3, O(2)) are both the quartic
    Del Pezzo surface S = (2,2) in P^4 with L_S = 2H; the Q^4 relation forces
    a K_S^2 different from the actual K_S^2 = 4."""
    out = []
    S = CompleteIntersection(4, (2, 2))
    c1 = S.chern_coefficients()[1]
    H2 = S.degree
    L, K = 2, -c1
    d = L * L * H2
    g = (K * L + L * L) * H2 // 2 + 1
    chi = Fraction(S.integrate(1, 1) + S.integrate(2), 12)
    k2 = Fraction(S.integrate(1, 1))
    forced = surface_k2(Surface4Invariants(d, g, int(chi)))
    for name in ("(P^4, O(2))", "(Q^3, O(2))"):
        out.append(SectionCheck(name, d, g, chi, k2, forced))
    return out
