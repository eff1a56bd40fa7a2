"""Genus bounds for curves on Q^3 and in P^4, and the postulation numbers mu_l."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .invariants import Verdict


@dataclass(frozen=True)
class CurveOnQuadric:
    """A curve of degree d and genus g on Q^3 lying on a surface of degree 2k."""

    d: int
    g: int
    k: int

    def __post_init__(self):
        if self.d < 1 or self.k < 1:
            raise ValueError("d and k must be positive")
        if self.g < 0:
            raise ValueError("genus must be non-negative")


def contained_bound(d: int, k: int) -> Fraction:
    """Bound for g-1 when the curve lies on a surface of degree 2k: d^2/(4k) + (k-3)d/2."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(d * d, 4 * k) + Fraction((k - 3) * d, 2)


def notcontained_bound(d: int, k: int) -> Fraction:
    """Bound for g-1 when the curve lies on no surface of degree < 2k: d^2/(2k) + (k-4)d/2."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(d * d, 2 * k) + Fraction((k - 4) * d, 2)


def satisfies_contained(c: CurveOnQuadric) -> Verdict:
    bound = contained_bound(c.d, c.k)
    return Verdict(c.g - 1 <= bound, bound - (c.g - 1))


def satisfies_notcontained(c: CurveOnQuadric) -> Verdict:
    bound = notcontained_bound(c.d, c.k)
    return Verdict(c.g - 1 <= bound, bound - (c.g - 1))


def mu(d: int, g: int, l: int) -> Fraction:
    """c_2(N(-l)) = d^2/2 + l(l-3)d - 2l(g-1)."""
    return Fraction(d * d, 2) + l * (l - 3) * d - 2 * l * (g - 1)


def epas_check(d: int, g: int, s: int) -> Verdict:
    """0 <= mu_s <= s^2 d.  The residual is the distance to the nearer end
    (negative when violated)."""
    m = mu(d, g, s)
    residual = min(m, s * s * d - m)
    return Verdict(residual >= 0, residual)


def epas_lower_genus(d: int, s: int) -> Fraction:
    """Smallest g-1 allowed by mu_s <= s^2 d, namely d^2/(4s) - 3d/2 (s >= 1)."""
    if s < 1:
        raise ValueError("s must be positive")
    return Fraction(d * d, 4 * s) - Fraction(3 * d, 2)


def castelnuovo_p4(d: int) -> int:
    """Genus bound for curves of degree d in P^4 (nondegenerate, not on a
    surface of degree < 4), in the refined form

        d - 1 = 4 m1 + e1,  pi_1 = 4 C(m1, 2) + m1 (e1 + 1) + mu1,

    with mu1 = 1 when e1 = 3 and 0 otherwise.  See :func:`castelnuovo_classical`
    for the plain bound of nondegenerate curves.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    m1, e1 = divmod(d - 1, 4)
    return 4 * comb(m1, 2) + m1 * (e1 + 1) + (1 if e1 == 3 else 0)


def castelnuovo_classical(d: int, r: int = 4) -> int:
    """Castelnuovo's bound for nondegenerate curves in P^r:
    d - 1 = m(r-1) + e, pi_0 = C(m, 2)(r-1) + m e."""
    if d < 1 or r < 2:
        raise ValueError("need d >= 1 and r >= 2")
    m, e = divmod(d - 1, r - 1)
    return comb(m, 2) * (r - 1) + m * e


def castelnuovo_printed_variant(d: int) -> int:
    """C(m, 2)*4 + m*e with m = (d-1)//4, e = d-1-4m: this mixes the two
    conventions above and gives 10 at d = 12."""
    m, e = divmod(d - 1, 4)
    return comb(m, 2) * 4 + m * e
