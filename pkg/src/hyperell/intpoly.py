"""Univariate polynomials over the integers.

Coefficients are arbitrary-precision Python ints stored in ascending
degree order with no trailing zeros; the zero polynomial has an empty
coefficient tuple and degree -inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

NEG_INFINITY = float("-inf")


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients ascending, trailing zeros stripped."""

    coeffs: tuple[int, ...]

    @staticmethod
    def of(coeffs: Sequence[int]) -> "IntPoly":
        c = list(int(x) for x in coeffs)
        while c and c[-1] == 0:
            c.pop()
        return IntPoly(tuple(c))

    @staticmethod
    def zero() -> "IntPoly":
        return IntPoly(())

    @property
    def degree(self) -> "int | float":
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        """Coefficient of x**i (total: 0 beyond the degree)."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.of(
            [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.of(
            [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return IntPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def scale(self, k: int) -> "IntPoly":
        if k == 0:
            return IntPoly.zero()
        return IntPoly(tuple(k * c for c in self.coeffs))

    def derivative(self) -> "IntPoly":
        return IntPoly.of(
            [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _sylvester_det(f: IntPoly, g: IntPoly) -> int:
    """Resultant as the determinant of the Sylvester matrix.

    Bareiss fraction-free elimination keeps every intermediate value an
    exact integer; row swaps flip the sign.
    """
    n, m = f.degree, g.degree
    size = n + m
    rows: list[list[int]] = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - m - 1 - i))
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, size):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (
                    rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                ) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[size - 1][size - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) over the integers."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    return _sylvester_det(f, g)


def disc(f: IntPoly) -> int:
    """Discriminant (-1)^{n(n-1)/2} Res(f, f') / lc(f)."""
    if f.is_zero or f.degree < 1:
        raise ValueError("discriminant requires degree >= 1")
    n = f.degree
    res = resultant(f, f.derivative())
    num = (-1) ** (n * (n - 1) // 2) * res
    q, r = divmod(num, f.leading)
    if r != 0:
        raise AssertionError("lc(f) must divide the signed resultant")
    return q


def curve_rhs(g: IntPoly, h: IntPoly) -> IntPoly:
    """The single-equation form 4*g + h**2 of the defining data."""
    return g.scale(4) + h * h


def gauss_content_free(f: IntPoly) -> IntPoly:
    """f divided by the gcd of its coefficients (sign of lc preserved)."""
    if f.is_zero:
        return f
    c = 0
    for a in f.coeffs:
        c = math.gcd(c, a)
    return IntPoly(tuple(a // c for a in f.coeffs))
