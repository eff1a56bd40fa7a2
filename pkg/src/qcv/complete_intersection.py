"""Chern numbers of smooth complete intersections in projective space.

Used to check the double point relations and the closed forms for K.L^2,
K^2.L, K^3 on the complete-intersection types of the classification table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod


def _series_inverse_linear(a: int, order: int) -> list[int]:
    return [(-a) ** k for k in range(order + 1)]


def _mul(p: list[int], q: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, a in enumerate(p[: order + 1]):
        for j, b in enumerate(q[: order + 1 - i]):
            out[i + j] += a * b
    return out


@dataclass(frozen=True)
class CompleteIntersection:
    """X = V(f_1, ..., f_r) in P^N with deg f_i = degrees[i]."""

    ambient: int
    degrees: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.ambient - len(self.degrees)

    @property
    def degree(self) -> int:
        return prod(self.degrees)

    def chern_coefficients(self) -> list[int]:
        """c_k(T_X) = coeffs[k] * h^k."""
        m = self.dim
        series = [comb(self.ambient + 1, k) for k in range(m + 1)]
        for a in self.degrees:
            series = _mul(series, _series_inverse_linear(a, m), m)
        return series

    def integrate(self, *chern_indices: int) -> int:
        """Degree of c_{i1} ... c_{ik} h^rest on X."""
        total = sum(chern_indices)
        if total > self.dim:
            raise ValueError("product exceeds the dimension")
        cs = self.chern_coefficients()
        return prod(cs[i] for i in chern_indices) * self.degree

    def hyperplane_section(self) -> CompleteIntersection:
        return CompleteIntersection(self.ambient, self.degrees + (1,))


@dataclass(frozen=True)
class ThreefoldNumbers:
    d: int
    L3: int
    x1L2: int
    x1sqL: int
    x2L: int
    x1cube: int
    x1x2: int
    x3: int
    g: int
    chi_OS: Fraction
    chi_OX: Fraction


def threefold_numbers(X: CompleteIntersection) -> ThreefoldNumbers:
    """All Chern numbers of a complete intersection threefold, plus g and the chi's."""
    if X.dim != 3:
        raise ValueError("a threefold is required")
    i = X.integrate
    d = X.degree
    x1L2 = i(1)
    # curve section C: 2g - 2 = (K_X + 2L) L^2
    g = (-x1L2 + 2 * d) // 2 + 1
    S = X.hyperplane_section()
    chi_OS = Fraction(S.integrate(1, 1) + S.integrate(2), 12)
    chi_OX = Fraction(i(1, 2), 24)
    return ThreefoldNumbers(
        d=d, L3=d, x1L2=x1L2, x1sqL=i(1, 1), x2L=i(2), x1cube=i(1, 1, 1),
        x1x2=i(1, 2), x3=i(3), g=g, chi_OS=chi_OS, chi_OX=chi_OX,
    )


def quadric_threefold(*extra_degrees: int) -> CompleteIntersection:
    """A threefold of Q^5 cut out by a quadric and ``extra_degrees`` in P^6."""
    return CompleteIntersection(6, (2,) + tuple(extra_degrees))


def dpf2_residual_dot_L(t: ThreefoldNumbers, n: int = 5) -> Fraction:
    """(d/2) L^3 minus the right side of the degree-two relation, dotted with L."""
    rhs = Fraction(n * n - n + 2, 2) * t.L3 - n * t.x1L2 + t.x1sqL - t.x2L
    return Fraction(t.d, 2) * t.L3 - rhs


def dpf3_residual(t: ThreefoldNumbers, n: int = 5) -> Fraction:
    """Left side of the degree-three double point relation."""
    return (
        Fraction(n**3 - 3 * n * n + 8 * n - 12, 6) * t.L3
        + Fraction(-n * n + n - 2, 2) * t.x1L2
        + n * (t.x1sqL - t.x2L)
        + 2 * t.x1x2
        - t.x1cube
        - t.x3
    )
