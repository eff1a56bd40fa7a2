"""Intersection tables of the few test surfaces used by the restriction engine.

P^2 has Pic = Z h with h^2 = 1.  The Hirzebruch surface F_e has basis (E, f)
with E^2 = -e, E.f = 1, f^2 = 0 and K = -2E - (2+e) f.  Coefficients of a
class may be polynomials in an auxiliary integer parameter, so the
intersection numbers come out as RationalPoly values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rational import Number, RationalPoly

Coeff = Number | RationalPoly


@dataclass(frozen=True)
class Surface:
    name: str
    basis: tuple[str, ...]
    form: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    euler: int

    def cls(self, *coeffs: Coeff) -> DivisorClass:
        if len(coeffs) != len(self.basis):
            raise ValueError(f"{self.name} needs {len(self.basis)} coefficients")
        return DivisorClass(self, tuple(RationalPoly.coerce(c) for c in coeffs))

    @property
    def K(self) -> DivisorClass:
        return self.cls(*self.canonical)

    @property
    def c1(self) -> DivisorClass:
        return -self.K

    def zero(self) -> DivisorClass:
        return self.cls(*([0] * len(self.basis)))


@dataclass(frozen=True)
class DivisorClass:
    surface: Surface
    coeffs: tuple[RationalPoly, ...]

    def _same(self, other: DivisorClass) -> None:
        if other.surface != self.surface:
            raise ValueError("classes live on different surfaces")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._same(other)
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __rmul__(self, k: Coeff) -> DivisorClass:
        k = RationalPoly.coerce(k)
        return DivisorClass(self.surface, tuple(k * a for a in self.coeffs))

    def __truediv__(self, k: Number) -> DivisorClass:
        return DivisorClass(self.surface, tuple(a / k for a in self.coeffs))

    def dot(self, other: DivisorClass) -> RationalPoly:
        self._same(other)
        total = RationalPoly()
        form = self.surface.form
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                if form[i][j]:
                    total = total + form[i][j] * a * b
        return total

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for p in self.coeffs for c in p.coeffs)

    def format(self, var: str = "a") -> str:
        terms = [f"({c.format(var)}){b}" for c, b in zip(self.coeffs, self.surface.basis) if not c.is_zero()]
        return " + ".join(terms) or "0"


def _hirzebruch(e: int) -> Surface:
    return Surface(f"F{e}", ("E", "f"), ((-e, 1), (1, 0)), (-2, -(2 + e)), 4)


P2 = Surface("P2", ("h",), ((1,),), (-3,), 3)
F0 = _hirzebruch(0)
F1 = _hirzebruch(1)
F2 = _hirzebruch(2)


def normal_chern(classes: Sequence[DivisorClass]) -> tuple[DivisorClass, RationalPoly]:
    """(c1, c2) of a direct sum of line bundles with the given classes."""
    if not classes:
        raise ValueError("at least one summand required")
    c1 = classes[0]
    c2 = RationalPoly()
    for i, a in enumerate(classes):
        if i:
            c1 = c1 + a
        for b in classes[i + 1:]:
            c2 = c2 + a.dot(b)
    return c1, c2
