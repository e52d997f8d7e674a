"""Exact point counting over finite fields.

Three plane models are supported:

    y^2 + h(x)*y = g(x)   characteristic 2 (one smooth point at infinity)
    u^2 = s(x)            odd characteristic
    y^3 = f(x)            odd characteristic, deg f coprime to 3

The dominant cost of the whole pipeline is the affine loop over x, so
the inner loops are table driven: a quadratic (or cubic) residue table
indexed by the evaluated right-hand side, vectorized with numpy both
over prime fields and over extension fields (elements of GF(p^d) are
rows of an integer digit matrix). Character-2 fields are always tiny
here (the zeta symmetry caps the extension degree at the genus), so
they use the generic field objects with a per-point trace test.

The *_enum functions enumerate solution pairs directly and exist as
independent oracles; they share no code with the table paths.
"""

from __future__ import annotations

import numpy as np

from .field import ExtField, PrimeField
from .fpoly import FPoly, quad_solutions

# numpy int64 stays exact as long as p*p (and reduction-row accumulations)
# fit; the pipeline never gets near this.
_NP_PRIME_LIMIT = 1 << 30
_NP_EXT_LIMIT = 1 << 20


def _require_prime_coeffs(f: FPoly) -> list[int]:
    if not isinstance(f.field, PrimeField):
        raise ValueError("expected a polynomial over a prime field")
    return list(f.coeffs)


# ---------------------------------------------------------------------------
# prime-field table counting


def _np_poly_values(coeffs: list[int], p: int) -> np.ndarray:
    """Values of the polynomial at every x in GF(p), as an int64 array."""
    x = np.arange(p, dtype=np.int64)
    if not coeffs:
        return np.zeros(p, dtype=np.int64)
    acc = np.full(p, coeffs[-1] % p, dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        acc = (acc * x + c % p) % p
    return acc


def _np_power_table(p: int, e: int) -> np.ndarray:
    """Boolean table marking the e-th powers in GF(p)."""
    x = np.arange(p, dtype=np.int64)
    v = np.ones(p, dtype=np.int64)
    for _ in range(e):
        v = v * x % p
    table = np.zeros(p, dtype=bool)
    table[v] = True
    return table


def _affine_square_prime(s_coeffs: list[int], p: int) -> int:
    v = _np_poly_values(s_coeffs, p)
    squares = _np_power_table(p, 2)
    zero = v == 0
    return int(zero.sum()) + 2 * int((squares[v] & ~zero).sum())


def _affine_cube_prime(f_coeffs: list[int], p: int) -> int:
    if p % 3 != 1:
        # cubing is a bijection when q is not 1 mod 3
        return p
    v = _np_poly_values(f_coeffs, p)
    cubes = _np_power_table(p, 3)
    zero = v == 0
    return int(zero.sum()) + 3 * int((cubes[v] & ~zero).sum())


def _affine_power_python(poly: FPoly, field, e: int) -> int:
    """Slow per-x fallback: solutions of y^e = poly(x) via the power map.

    Only reached for field sizes beyond the table limits; counts roots
    through the image test v^((q-1)/gcd(e, q-1)) == 1.
    """
    q = field.order
    g = np.gcd(e, q - 1)
    exponent = (q - 1) // g
    total = 0
    for x in field.elements():
        v = _eval_at(poly, field, x)
        if field.is_zero(v):
            total += 1
        elif field.pow(v, exponent) == field.one:
            total += int(g)
    return total


# ---------------------------------------------------------------------------
# extension-field table counting: elements of GF(p^d) are rows of a
# (q, d) digit matrix, multiplication is schoolbook convolution followed
# by folding the overflow columns with precomputed reduction rows


class _ExtTable:
    def __init__(self, p: int, d: int):
        if p**d > (1 << 26):
            raise ValueError("extension table would be unreasonably large")
        field = ExtField(p, d)
        self.p = p
        self.d = d
        self.q = p**d
        self.red_rows = [list(r) for r in field._red_rows]
        codes = np.arange(self.q, dtype=np.int64)
        self.X = np.empty((self.q, d), dtype=np.int64)
        for j in range(d):
            self.X[:, j] = (codes // p**j) % p
        self.pvec = np.array([p**j for j in range(d)], dtype=np.int64)

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        p, d = self.p, self.d
        full = np.zeros((A.shape[0], 2 * d - 1), dtype=np.int64)
        for i in range(d):
            Ai = A[:, i]
            for j in range(d):
                full[:, i + j] += Ai * B[:, j]
        out = full[:, :d] % p
        for t in range(d - 1):
            c = full[:, d + t] % p
            row = self.red_rows[t]
            for i in range(d):
                if row[i]:
                    out[:, i] += c * row[i]
        return out % p

    def eval_poly(self, coeffs: list[int]) -> np.ndarray:
        """Evaluate a GF(p)-coefficient polynomial at every field element."""
        p = self.p
        acc = np.zeros((self.q, self.d), dtype=np.int64)
        if not coeffs:
            return acc
        acc[:, 0] = coeffs[-1] % p
        for c in reversed(coeffs[:-1]):
            acc = self.mul(acc, self.X)
            acc[:, 0] = (acc[:, 0] + c) % p
        return acc

    def codes(self, A: np.ndarray) -> np.ndarray:
        return A @ self.pvec

    def power_table(self, e: int) -> np.ndarray:
        A = self.X
        for _ in range(e - 1):
            A = self.mul(A, self.X)
        table = np.zeros(self.q, dtype=bool)
        table[self.codes(A)] = True
        return table


def _affine_square_ext(s_coeffs: list[int], p: int, d: int) -> int:
    t = _ExtTable(p, d)
    v = t.codes(t.eval_poly(s_coeffs))
    squares = t.power_table(2)
    zero = v == 0
    return int(zero.sum()) + 2 * int((squares[v] & ~zero).sum())


def _affine_cube_ext(f_coeffs: list[int], p: int, d: int) -> int:
    q = p**d
    if q % 3 != 1:
        return q
    t = _ExtTable(p, d)
    v = t.codes(t.eval_poly(f_coeffs))
    cubes = t.power_table(3)
    zero = v == 0
    return int(zero.sum()) + 3 * int((cubes[v] & ~zero).sum())


# ---------------------------------------------------------------------------
# public counters (projective totals)


def _points_at_infinity_square_model(s: FPoly, p: int, n: int) -> int:
    """Points above x = infinity on the smooth model of u^2 = s(x)."""
    deg = s.degree
    if deg < 1:
        raise ValueError("right-hand side must be nonconstant")
    if deg % 2 == 1:
        return 1
    lc = s.leading
    q_half = (p**n - 1) // 2
    return 2 if pow(lc, q_half, p) == 1 else 0


def count_odd(s: FPoly, n: int) -> int:
    """|C(GF(p^n))| for the smooth model of u^2 = s(x), p odd.

    s must be separable for the count to be the one of a smooth curve;
    the affine tally itself is valid for any s. Points at infinity
    follow the degree parity of s (one ramified point for odd degree,
    two or zero rational points for even degree as lc(s) is a square
    or not).
    """
    coeffs = _require_prime_coeffs(s)
    p = s.field.p
    if p == 2:
        raise ValueError("use count_char2 in characteristic 2")
    if n == 1:
        if p < _NP_PRIME_LIMIT:
            affine = _affine_square_prime(coeffs, p)
        else:
            affine = _affine_power_python(s, PrimeField(p), 2)
    else:
        if p < _NP_EXT_LIMIT and p**n <= (1 << 26):
            affine = _affine_square_ext(coeffs, p, n)
        else:
            affine = _affine_power_python(s, ExtField(p, n), 2)
    return affine + _points_at_infinity_square_model(s, p, n)


def count_char2(h: FPoly, g: FPoly, n: int) -> int:
    """|C(GF(2^n))| for the smooth model of y^2 + h(x)y = g(x).

    The per-x solution count is 1 when h(x) = 0 (unique square root)
    and otherwise 2 or 0 by the trace criterion; the single point at
    infinity comes from the odd degree of g.
    """
    if h.field.characteristic != 2 or g.field.characteristic != 2:
        raise ValueError("count_char2 requires characteristic 2")
    _require_prime_coeffs(h), _require_prime_coeffs(g)
    field = PrimeField(2) if n == 1 else ExtField(2, n)
    total = 1
    if n == 1:
        for x in field.elements():
            total += quad_solutions(h(x), g(x), field)
    else:
        for x in field.elements():
            total += quad_solutions(
                h.evaluate_in(field, x), g.evaluate_in(field, x), field
            )
    return total


def count_cubic(f: FPoly, n: int) -> int:
    """|C(GF(p^n))| for the smooth model of y^3 = f(x), gcd(3, deg f) = 1.

    When q is not 1 mod 3 the cube map is a bijection and every x
    contributes exactly one point. The model has a single rational
    point at infinity because 3 and deg f are coprime.
    """
    coeffs = _require_prime_coeffs(f)
    p = f.field.p
    if f.degree < 1 or f.degree % 3 == 0:
        raise ValueError("cubic counter requires deg f coprime to 3")
    if n == 1:
        if p < _NP_PRIME_LIMIT:
            affine = _affine_cube_prime(coeffs, p)
        else:
            affine = _affine_power_python(f, PrimeField(p), 3)
    else:
        if p < _NP_EXT_LIMIT and p**n <= (1 << 26):
            affine = _affine_cube_ext(coeffs, p, n)
        else:
            affine = _affine_power_python(f, ExtField(p, n), 3)
    return affine + 1


# ---------------------------------------------------------------------------
# enumeration oracles: direct solution-pair counting with field objects,
# sharing nothing with the table paths above


def _eval_at(poly: FPoly, field, x):
    if isinstance(field, PrimeField):
        return poly(x)
    return poly.evaluate_in(field, x)


def enum_affine_quadratic(h: FPoly, g: FPoly, field) -> int:
    """#{(x, y) : y^2 + h(x)*y = g(x)} by brute force."""
    count = 0
    elems = list(field.elements())
    for x in elems:
        hv = _eval_at(h, field, x)
        gv = _eval_at(g, field, x)
        for y in elems:
            lhs = field.add(field.mul(y, y), field.mul(hv, y))
            if lhs == gv:
                count += 1
    return count


def enum_affine_square(s: FPoly, field) -> int:
    """#{(x, u) : u^2 = s(x)} by brute force."""
    count = 0
    elems = list(field.elements())
    for x in elems:
        sv = _eval_at(s, field, x)
        for u in elems:
            if field.mul(u, u) == sv:
                count += 1
    return count


def enum_affine_cube(f: FPoly, field) -> int:
    """#{(x, y) : y^3 = f(x)} by brute force."""
    count = 0
    elems = list(field.elements())
    for x in elems:
        fv = _eval_at(f, field, x)
        for y in elems:
            if field.mul(field.mul(y, y), y) == fv:
                count += 1
    return count
