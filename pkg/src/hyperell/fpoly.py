"""Polynomial algebra over finite fields.

FPoly is a thin immutable wrapper around a field context plus an
ascending coefficient tuple. Everything here operates on tiny inputs
(degrees bounded by ~2*genus+1), so clarity beats asymptotics:
factorization is squarefree decomposition, then distinct-degree, then
randomized equal-degree splitting with a deterministic seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InternalConsistencyError
from .field import ExtField, PrimeField
from .intpoly import NEG_INFINITY, IntPoly


@dataclass(frozen=True)
class FPoly:
    """Polynomial over a finite field, coefficients ascending."""

    field: "PrimeField | ExtField"
    coeffs: tuple

    @staticmethod
    def of(field, coeffs: Sequence) -> "FPoly":
        c = [field.scalar(x) if isinstance(x, int) else x for x in coeffs]
        while c and field.is_zero(c[-1]):
            c.pop()
        return FPoly(field, tuple(c))

    @staticmethod
    def zero(field) -> "FPoly":
        return FPoly(field, ())

    @staticmethod
    def one(field) -> "FPoly":
        return FPoly(field, (field.one,))

    @staticmethod
    def x(field) -> "FPoly":
        return FPoly(field, (field.zero, field.one))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __add__(self, other: "FPoly") -> "FPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return FPoly.of(F, [F.add(self.coeff(i), other.coeff(i))
                            for i in range(n)])

    def __sub__(self, other: "FPoly") -> "FPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return FPoly.of(F, [F.sub(self.coeff(i), other.coeff(i))
                            for i in range(n)])

    def __neg__(self) -> "FPoly":
        F = self.field
        return FPoly(F, tuple(F.neg(c) for c in self.coeffs))

    def __mul__(self, other: "FPoly") -> "FPoly":
        F = self.field
        if self.is_zero or other.is_zero:
            return FPoly.zero(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not F.is_zero(a):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return FPoly(F, tuple(out))

    def scale(self, k) -> "FPoly":
        F = self.field
        if F.is_zero(k):
            return FPoly.zero(F)
        return FPoly(F, tuple(F.mul(k, c) for c in self.coeffs))

    def monic(self) -> "FPoly":
        if self.is_zero:
            raise ValueError("zero polynomial cannot be made monic")
        return self.scale(self.field.inv(self.leading))

    def divmod(self, other: "FPoly") -> tuple["FPoly", "FPoly"]:
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dlen = len(dv)
        inv_lead = F.inv(dv[-1])
        q = [F.zero] * max(1, len(rem) - dlen + 1)
        while rem and len(rem) >= dlen:
            if F.is_zero(rem[-1]):
                rem.pop()
                continue
            shift = len(rem) - dlen
            coef = F.mul(rem[-1], inv_lead)
            q[shift] = coef
            for i, c in enumerate(dv):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(coef, c))
            while rem and F.is_zero(rem[-1]):
                rem.pop()
        return FPoly.of(F, q), FPoly.of(F, rem)

    def __floordiv__(self, other: "FPoly") -> "FPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "FPoly") -> "FPoly":
        return self.divmod(other)[1]

    def divides_exactly(self, other: "FPoly") -> bool:
        """True if self divides other with zero remainder."""
        return (other % self).is_zero

    def derivative(self) -> "FPoly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(F.scalar(i), self.coeffs[i]))
        return FPoly.of(F, out)

    def __call__(self, x):
        """Evaluate at a point of the coefficient field."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def evaluate_in(self, ext: ExtField, point):
        """Evaluate at a point of an extension of the coefficient field."""
        if ext.p != self.field.characteristic:
            raise ValueError("extension has the wrong characteristic")
        acc = ext.zero
        for c in reversed(self.coeffs):
            acc = ext.add(ext.mul(acc, point), ext.scalar(self._lift(c)))
        return acc

    def _lift(self, c) -> int:
        if not isinstance(self.field, PrimeField):
            raise ValueError("only prime-field coefficients can be lifted")
        return c

    def pow_mod(self, e: int, modulus: "FPoly") -> "FPoly":
        result = FPoly.one(self.field)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def is_separable(self) -> bool:
        """No repeated roots over the algebraic closure."""
        if self.is_zero:
            raise ValueError("zero polynomial")
        if self.degree == 0:
            return True
        return gcd_poly(self, self.derivative()).degree == 0

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(f"{c}*{mono}" if i else f"{c}")
        return " + ".join(parts)


def reduce_mod(f: IntPoly, p: int) -> FPoly:
    """Coefficientwise reduction of an integer polynomial into GF(p)[x]."""
    F = PrimeField(p)
    return FPoly.of(F, [c % p for c in f.coeffs])


def gcd_poly(a: FPoly, b: FPoly) -> FPoly:
    """Monic gcd; errors when both arguments vanish."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Iterable[FPoly]) -> FPoly:
    """Monic gcd of several polynomials; errors if all of them vanish."""
    acc = None
    for q in polys:
        if q.is_zero:
            continue
        acc = q.monic() if acc is None else gcd_poly(acc, q)
        if acc.degree == 0:
            return acc
    if acc is None:
        raise ValueError("gcd of all-zero polynomials is undefined")
    return acc


def extended_gcd(a: FPoly, b: FPoly) -> tuple[FPoly, FPoly, FPoly]:
    """(g, u, v) with g monic, u*a + v*b = g."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = FPoly.one(F), FPoly.zero(F)
    t0, t1 = FPoly.zero(F), FPoly.one(F)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    lead_inv = F.inv(r0.leading)
    return r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)


# ---------------------------------------------------------------------------
# factorization


def _squarefree_decomposition(f: FPoly) -> list[tuple[FPoly, int]]:
    """[(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i monic squarefree coprime."""
    F = f.field
    p = F.characteristic
    f = f.monic()
    out: list[tuple[FPoly, int]] = []

    def recurse(g: FPoly, mult: int) -> None:
        d = g.derivative()
        if d.is_zero:
            # g is a p-th power: all exponents divisible by p
            root_coeffs = []
            for i in range(0, len(g.coeffs), p):
                c = g.coeffs[i]
                # coefficients of GF(p) are their own p-th roots; extension
                # coefficients need an explicit root via Frobenius inverse
                if isinstance(F, ExtField):
                    c = F.pow(c, F.order // p)
                root_coeffs.append(c)
            recurse(FPoly.of(F, root_coeffs), mult * p)
            return
        c = gcd_poly(g, d)
        w = g // c
        i = 1
        while w.degree > 0:
            y = gcd_poly(w, c)
            piece = w // y
            if piece.degree > 0:
                out.append((piece.monic(), mult * i))
            w, c = y, c // y
            i += 1
        if c.degree > 0:
            recurse(c, mult)

    if f.degree > 0:
        recurse(f, 1)
    return out


def _distinct_degree(f: FPoly) -> list[tuple[FPoly, int]]:
    """Split monic squarefree f into products of same-degree irreducibles."""
    F = f.field
    q = F.order
    x = FPoly.x(F)
    out = []
    g = f
    h = x
    d = 0
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, g)
        piece = gcd_poly(h - x, g)
        if piece.degree > 0:
            out.append((piece, d))
            g = g // piece
            if g.degree > 0:
                h = h % g
    if g.degree > 0:
        out.append((g.monic(), g.degree))
    return out


def _equal_degree_split(f: FPoly, d: int, rng: random.Random) -> list[FPoly]:
    """Cantor-Zassenhaus: f monic squarefree, all factors of degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    q = F.order
    n = f.degree
    while True:
        u = FPoly.of(F, [F.from_index(rng.randrange(q)) for _ in range(n)])
        if u.degree < 1:
            continue
        g = gcd_poly(u, f) if not u.is_zero else None
        if g is not None and 0 < g.degree < n:
            left, right = g, f // g
            break
        if F.characteristic == 2:
            # trace map sum u^(2^i) over the degree-d subfield
            t = u % f
            acc = t
            # q = 2^k; the relevant trace runs over k*d/k ... use k*d steps
            bits = 0
            qq = q
            while qq > 1:
                bits += 1
                qq >>= 1
            for _ in range(bits * d - 1):
                t = (t * t) % f
                acc = acc + t
            w = acc
        else:
            w = u.pow_mod((q**d - 1) // 2, f) - FPoly.one(F)
        if w.is_zero:
            continue
        g = gcd_poly(w, f)
        if 0 < g.degree < n:
            left, right = g, f // g
            break
    return (_equal_degree_split(left.monic(), d, rng)
            + _equal_degree_split(right.monic(), d, rng))


def factor(f: FPoly, seed: int = 0) -> list[tuple[FPoly, int]]:
    """Factor into monic irreducibles: [(irreducible, multiplicity)], sorted.

    The leading unit is not returned; the product of the factors with
    multiplicities equals f divided by its leading coefficient. The
    randomized splitting stage is seeded for reproducibility.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    F = f.field
    if f.degree == 0:
        return []
    rng = random.Random((seed * 0x1F3F) ^ (f.degree * 1009) ^ F.order)
    result: list[tuple[FPoly, int]] = []
    for sqfree, mult in _squarefree_decomposition(f):
        for prod, d in _distinct_degree(sqfree):
            for irr in _equal_degree_split(prod, d, rng):
                result.append((irr, mult))
    result.sort(key=lambda t: (t[0].degree, [t[0].field.to_index(c)
                                             for c in t[0].coeffs]))
    return result


def is_irreducible(f: FPoly) -> bool:
    if f.is_zero or f.degree < 1:
        return False
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


# ---------------------------------------------------------------------------
# characteristic-2 helpers


def sqrt_mod(g: FPoly, r: FPoly) -> FPoly:
    """The unique s with s^2 = g (mod r), for separable r over GF(2).

    Computed per irreducible factor of r by d-1 squarings (the inverse
    of Frobenius in GF(2^d)), then recombined with the Chinese remainder
    construction; deg s < deg r.
    """
    F = g.field
    if F.characteristic != 2:
        raise ValueError("square roots mod r are specific to GF(2^k)")
    if r.is_zero or not r.is_separable():
        raise ValueError("modulus must be nonzero and separable")
    if r.degree == 0:
        return FPoly.zero(F)
    parts = []
    for ri, _ in factor(r):
        d = ri.degree
        gi = g % ri
        si = gi.pow_mod(2 ** (d - 1), ri)
        parts.append((si, ri))
    # CRT recombination
    s, m = parts[0]
    for si, ri in parts[1:]:
        gcd1, u, v = extended_gcd(m, ri)
        if gcd1.degree != 0:
            raise InternalConsistencyError("CRT moduli are not coprime")
        # s_new = s + (si - s) * u * m  (== s mod m, == si mod ri)
        s = (s + ((si - s) * u * m)) % (m * ri)
        m = m * ri
    s = s % r
    check = (s * s - g) % r
    if not check.is_zero:
        raise InternalConsistencyError("square root reconstruction failed")
    return s


def quad_solutions(h0, g0, field) -> int:
    """Number of roots of T^2 + h0*T - g0 over a field of characteristic 2.

    With h0 = 0 the square root is unique; otherwise the substitution
    T = h0*U reduces to U^2 + U = g0/h0^2, solvable exactly when the
    absolute trace of the right side vanishes.
    """
    if field.characteristic != 2:
        raise ValueError("root count formula is specific to characteristic 2")
    if field.is_zero(h0):
        return 1
    u = field.mul(g0, field.pow(field.inv(h0), 2))
    return 2 if field.trace(u) == 0 else 0


def is_square(a, field) -> bool:
    """Whether a is a square in the multiplicative group of an odd field."""
    return field.is_square(a)
