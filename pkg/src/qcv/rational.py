"""Exact rational scalars, small dense matrices and univariate polynomials.

Everything in the package computes over :class:`fractions.Fraction`; no
floating point value ever enters a computation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


class SingularMatrix(ArithmeticError):
    """Raised when a linear system has no unique solution."""


def Q(value: Number | str) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(value)


def render(value: Number) -> str:
    """Render an exact value as 'p' or 'p/q'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[Number]]):
        table = tuple(tuple(Q(v) for v in row) for row in rows)
        if not table or not table[0]:
            raise ValueError("matrix must have at least one entry")
        width = len(table[0])
        if any(len(row) != width for row in table):
            raise ValueError("ragged matrix")
        self._rows = table

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(render(v) for v in row) for row in self._rows)
        return f"RationalMatrix([{body}])"

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return RationalMatrix(
            [
                [sum((a * other[k, j] for k, a in enumerate(row)), Fraction(0)) for j in range(other.cols)]
                for row in self._rows
            ]
        )

    def apply(self, vector: Sequence[Number]) -> list[Fraction]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        vec = [Q(v) for v in vector]
        return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self._rows]


def _require_square(m: RationalMatrix) -> None:
    if m.rows != m.cols:
        raise ValueError(f"square matrix required, got {m.shape}")


def determinant(m: RationalMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination with row pivoting."""
    _require_square(m)
    a = m.to_lists()
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            factor = a[r][col] / p
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def solve_linear(m: RationalMatrix, rhs: Sequence[Number]) -> list[Fraction]:
    """Solve ``m @ v = rhs`` exactly.

    Raises SingularMatrix when ``m`` is not invertible.
    """
    _require_square(m)
    if len(rhs) != m.rows:
        raise ValueError("rhs length does not match row count")
    n = m.rows
    aug = [row + [Q(b)] for row, b in zip(m.to_lists(), rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"zero determinant (no pivot in column {col})")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


class RationalPoly:
    """Univariate polynomial with Fraction coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, value: Number) -> RationalPoly:
        return cls([value])

    @classmethod
    def var(cls) -> RationalPoly:
        return cls([0, 1])

    @classmethod
    def coerce(cls, value: Number | RationalPoly) -> RationalPoly:
        return value if isinstance(value, RationalPoly) else cls([value])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, at: Number) -> Fraction:
        return eval_poly(self, at)

    def __add__(self, other: Number | RationalPoly) -> RationalPoly:
        if not isinstance(other, (int, Fraction, RationalPoly)):
            return NotImplemented
        other = RationalPoly.coerce(other)
        return RationalPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=Fraction(0)))

    __radd__ = __add__

    def __neg__(self) -> RationalPoly:
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other: Number | RationalPoly) -> RationalPoly:
        return self + (-RationalPoly.coerce(other))

    def __rsub__(self, other: Number | RationalPoly) -> RationalPoly:
        return RationalPoly.coerce(other) - self

    def __mul__(self, other: Number | RationalPoly) -> RationalPoly:
        if not isinstance(other, (int, Fraction, RationalPoly)):
            return NotImplemented
        other = RationalPoly.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> RationalPoly:
        scalar = Q(scalar)
        return RationalPoly(c / scalar for c in self.coeffs)

    def __pow__(self, k: int) -> RationalPoly:
        out = RationalPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPoly.const(other)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def derivative(self) -> RationalPoly:
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = render(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{render(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"RationalPoly({self.format()})"


def eval_poly(p: RationalPoly, at: Number) -> Fraction:
    """Horner evaluation."""
    at = Q(at)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * at + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(p: RationalPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial, sorted, without multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every value as a root")
    coeffs = list(p.coeffs)
    roots: set[Fraction] = set()
    # strip the factor t^k
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return sorted(roots)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    trimmed = RationalPoly(ints)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if eval_poly(trimmed, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def integer_roots(p: RationalPoly) -> list[int]:
    return [int(r) for r in rational_roots(p) if r.denominator == 1]


def root_bound(p: RationalPoly) -> Fraction:
    """Cauchy bound: every real root r of ``p`` satisfies |r| < the returned value."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(p.leading)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])
