"""Numerical invariants of codimension-two subvarieties of quadrics.

Threefolds on Q^5 are described by (d, g, chi(O_S), chi(O_X)), where S is a
general surface section; surfaces on Q^4 by (d, g, chi(O_S)).  The adjoint
intersection numbers K.L^2, K^2.L and K^3 of a threefold on Q^5 are closed
forms in these four numbers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, TextIO

from .rational import render


class OddDegree(ValueError):
    """Codimension-two subvarieties of Q^n (n >= 5) have even degree."""


def _check_degree(d: int) -> None:
    if not isinstance(d, int) or isinstance(d, bool):
        raise TypeError("degree must be an int")
    if d < 2:
        raise ValueError(f"degree must be at least 2, got {d}")
    if d % 2:
        raise OddDegree(f"degree {d} is odd")


@dataclass(frozen=True)
class Threefold5Invariants:
    d: int
    g: int
    chi_OS: int
    chi_OX: int

    def __post_init__(self):
        _check_degree(self.d)
        if self.g < 0:
            raise ValueError("sectional genus must be non-negative")


@dataclass(frozen=True)
class Surface4Invariants:
    d: int
    g: int
    chi: int

    def __post_init__(self):
        _check_degree(self.d)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    residual: Fraction

    def __bool__(self) -> bool:
        return self.ok


def kl2(inv: Threefold5Invariants) -> Fraction:
    """K_X . L^2 = 2(g-1) - 2d."""
    return Fraction(2 * (inv.g - 1) - 2 * inv.d)


def k2l(inv: Threefold5Invariants) -> Fraction:
    """K_X^2 . L = d^2/4 + 3d/2 - 8(g-1) + 6 chi(O_S)."""
    d, g1 = inv.d, inv.g - 1
    return Fraction(d * d, 4) + Fraction(3 * d, 2) - 8 * g1 + 6 * inv.chi_OS


def k3(inv: Threefold5Invariants) -> Fraction:
    """K_X^3 = -9d^2/4 + 27d/2 + gd + 18(g-1) - 30 chi(O_S) - 24 chi(O_X)."""
    d, g = inv.d, inv.g
    return (
        Fraction(-9 * d * d, 4)
        + Fraction(27 * d, 2)
        + g * d
        + 18 * (g - 1)
        - 30 * inv.chi_OS
        - 24 * inv.chi_OX
    )


def surface_k2(inv: Surface4Invariants) -> Fraction:
    """K_S^2 of a surface on Q^4 with balanced class, from 2K^2 = d^2/2 - 3d - 8(g-1) + 12 chi."""
    d = inv.d
    return (Fraction(d * d, 2) - 3 * d - 8 * (inv.g - 1) + 12 * inv.chi) / 2


def check_s3_nonneg(inv: Threefold5Invariants) -> Verdict:
    """Top Segre class of the normal bundle is non-negative.

    60 chi(O_S) >= 3d^2/2 - 12d + (d-48)(g-1) + 24 chi(O_X); the residual is
    LHS - RHS.
    """
    d, g1 = inv.d, inv.g - 1
    rhs = Fraction(3 * d * d, 2) - 12 * d + (d - 48) * g1 + 24 * inv.chi_OX
    residual = 60 * inv.chi_OS - rhs
    return Verdict(residual >= 0, residual)


def check_ghit(inv: Threefold5Invariants) -> Verdict:
    """Generalized Hodge index, d (K^2 L) <= (K L^2)^2, solved for chi(O_S).

    chi(O_S) <= 2(g-1)^2/(3d) - d^2/24 + 5d/12; the residual is RHS - chi.
    """
    d, g1 = inv.d, inv.g - 1
    bound = Fraction(2 * g1 * g1, 3 * d) - Fraction(d * d, 24) + Fraction(5 * d, 12)
    residual = bound - inv.chi_OS
    return Verdict(residual >= 0, residual)


@dataclass(frozen=True)
class KnownPairRecord:
    """One row of the low-degree classification (and the K3 scroll of degree 12).

    ``n`` is None for types that exist for every n >= 5; invariants not printed
    for a type are None.
    """

    type_label: str
    n: int | None
    d: int
    g: int | None
    q: int | None
    p_g: int | None
    description: str

    @property
    def chi_OS(self) -> int | None:
        if self.q is None or self.p_g is None:
            return None
        return 1 - self.q + self.p_g


_KNOWN_PAIRS = (
    KnownPairRecord("A", None, 2, 0, 0, 0, "((1,1,2), O(1))"),
    KnownPairRecord("B", None, 4, 1, 0, 0, "((1,2,2), O(1))"),
    KnownPairRecord("C", 6, 4, 0, 0, 0, "(P^1 x P^3, O(1,1))"),
    KnownPairRecord("D", 5, 4, 0, 0, 0, "(P(O_P1(1)^2 + O_P1(2)), xi)"),
    KnownPairRecord("E", None, 6, 4, 0, 1, "((1,2,3), O(1))"),
    KnownPairRecord("F", 5, 6, 1, 0, 0, "(P(T_P2), xi) embedded by a general codimension one subsystem of |xi|"),
    KnownPairRecord("G", 5, 6, 2, 0, 0, "double cover of P^1 x P^2 branched along a (2,2) divisor, L = p^*O(1,1)"),
    KnownPairRecord("H", None, 8, 9, 0, 5, "((1,2,4), O(1))"),
    KnownPairRecord("I", None, 8, 5, 0, 1, "((2,2,2), O(1))"),
    KnownPairRecord("L", 5, 8, 4, 0, 0, "(P(E), xi), E a rank two bundle on Q^2"),
    KnownPairRecord("M", None, 10, 16, 0, 14, "((1,2,5), O(1))"),
    KnownPairRecord(
        "N", 5, 10, 8, 0, 2,
        "f_{|K+L|}: X -> P^1 a Del Pezzo fibration, K_F^2 = 4, K_X = -L + f^*O_P1(1)",
    ),
    KnownPairRecord("O", 5, 12, None, None, None, "scroll over a minimal K3 surface"),
)

# chi(O_X) of the types read as threefolds on Q^5.  Rational varieties and
# fibrations over P^1 have chi = 1 (relative vanishing); for the complete
# intersections (2,a) in P^5, chi(O_X) = 1 - h^0(O_X(a-4)).
_THREEFOLD_CHI_OX = {"A": 1, "B": 1, "D": 1, "E": 1, "F": 1, "G": 1, "H": 0, "I": 1, "L": 1, "M": -5, "N": 1}


def known_pairs() -> list[KnownPairRecord]:
    return list(_KNOWN_PAIRS)


def lookup(d: int | None = None, n: int | None = None) -> list[KnownPairRecord]:
    """Filter the table.

    With ``n`` given only records whose ambient dimension is printed and equal
    to ``n`` are returned; types valid for every n carry ``n=None`` and are
    returned only when ``n`` is omitted.
    """
    out = []
    for rec in _KNOWN_PAIRS:
        if d is not None and rec.d != d:
            continue
        if n is not None and rec.n != n:
            continue
        out.append(rec)
    return out


def threefold_invariants(rec: KnownPairRecord) -> Threefold5Invariants | None:
    """Read a record as a threefold on Q^5, or None if it is not one."""
    if rec.n not in (None, 5) or rec.type_label not in _THREEFOLD_CHI_OX:
        return None
    return Threefold5Invariants(rec.d, rec.g, rec.chi_OS, _THREEFOLD_CHI_OX[rec.type_label])


FIXTURE_FIELDS = ("type_label", "n", "d", "g", "q", "p_g", "description")


def dump_known_pairs(sink: TextIO, records: Iterable[KnownPairRecord] | None = None) -> None:
    """Write the table as JSON lines with a fixed field order."""
    for rec in records if records is not None else _KNOWN_PAIRS:
        row = asdict(rec)
        sink.write(json.dumps({k: row[k] for k in FIXTURE_FIELDS}) + "\n")


def load_known_pairs(source: TextIO) -> list[KnownPairRecord]:
    return [KnownPairRecord(**json.loads(line)) for line in source if line.strip()]


def describe(inv: Threefold5Invariants) -> dict[str, str]:
    return {
        "K.L^2": render(kl2(inv)),
        "K^2.L": render(k2l(inv)),
        "K^3": render(k3(inv)),
    }
