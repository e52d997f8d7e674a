"""Prime fields GF(p) and extension fields GF(p^d).

Field contexts are passed around explicitly, in the style of most small
finite-field libraries: elements of GF(p) are plain ints in [0, p), and
elements of GF(p^d) are length-d tuples of ints (coefficients of the
residue polynomial in ascending order). Both representations are
immutable and hashable, and every operation is a pure function of its
inputs, so contexts and elements can be shared freely across threads.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .primes import is_prime

# ---------------------------------------------------------------------------
# minimal coefficient-list polynomial arithmetic over GF(p), used only for
# modulus construction and inversion inside ExtField


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polyrem(out, m, p)


def _polyrem(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        a = _trim(a)
        if len(a) - 1 < dm:
            break
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a = _trim(a)
    return _trim(a)


def _polypowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _polyrem(a, m, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        e >>= 1
    return result


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        bm = [(c * inv_lead) % p for c in b]
        a, b = b, _polyrem(a, bm, p)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over GF(p)."""
    d = len(m) - 1
    if d < 1:
        return False
    x = [0, 1] if d > 1 else _polyrem([0, 1], m, p)
    # x^(p^d) == x mod m
    t = x
    for _ in range(d):
        t = _polypowmod(t, p, m, p)
    if t != x:
        return False
    # proper Frobenius powers must move x away from every large subfield
    primes = set()
    dd = d
    f = 2
    while f * f <= dd:
        if dd % f == 0:
            primes.add(f)
            while dd % f == 0:
                dd //= f
        f += 1
    if dd > 1:
        primes.add(dd)
    for t_prime in primes:
        e = d // t_prime
        u = x
        for _ in range(e):
            u = _polypowmod(u, p, m, p)
        diff = _trim([(u[i] if i < len(u) else 0) - (x[i] if i < len(x) else 0)
                      for i in range(max(len(u), len(x)))])
        diff = [c % p for c in diff]
        if len(_polygcd(m, _trim(diff), p)) != 1:
            return False
    return True


def find_irreducible(p: int, d: int, seed: int = 0) -> tuple[int, ...]:
    """A monic irreducible of degree d over GF(p), by seeded random search.

    Deterministic for fixed (p, d, seed); no preference for any particular
    normal form since all downstream predicates are modulus-invariant.
    """
    if d == 1:
        return (0, 1)
    rng = random.Random((p * 0x9E3779B1 + d) ^ seed)
    while True:
        cand = [rng.randrange(p) for _ in range(d)] + [1]
        if cand[0] == 0:
            cand[0] = 1 + rng.randrange(p - 1) if p > 1 else 1
        if _is_irreducible(cand, p):
            return tuple(cand)


# ---------------------------------------------------------------------------


class PrimeField:
    """GF(p) with int elements in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    # context identity
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return self.p

    zero = 0
    one = 1

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def scalar(self, c: int) -> int:
        return c % self.p

    def is_zero(self, a: int) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def frobenius(self, a: int) -> int:
        return a

    def trace(self, a: int) -> int:
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def to_index(self, a: int) -> int:
        return a

    def from_index(self, i: int) -> int:
        return i

    def is_square(self, a: int) -> bool:
        if self.p == 2:
            raise ValueError("square test requires odd field order")
        if a == 0:
            raise ValueError("square test requires a nonzero element")
        return pow(a, (self.p - 1) // 2, self.p) == 1


class ExtField:
    """GF(p^d) as GF(p)[x]/(modulus), elements are length-d tuples."""

    __slots__ = ("p", "deg", "modulus", "_red_rows", "_trace_basis")

    def __init__(self, p: int, d: int,
                 modulus: "Sequence[int] | None" = None, seed: int = 0):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(p, d, seed)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not _is_irreducible(list(modulus), p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.deg = d
        self.modulus = modulus
        # x^(d+t) mod modulus for t = 0..d-2, as coefficient rows
        rows: list[tuple[int, ...]] = []
        base = tuple((-modulus[i]) % p for i in range(d))
        rows.append(base)
        for _ in range(d - 2):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            rows.append(tuple((shifted[i] + top * base[i]) % p
                              for i in range(d)))
        self._red_rows = rows
        self._trace_basis = None

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.deg

    @property
    def order(self) -> int:
        return self.p ** self.deg

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.deg

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.deg - 1)

    @property
    def gen(self) -> tuple[int, ...]:
        """The class of x, a root of the modulus."""
        if self.deg == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.deg - 2)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self) -> int:
        return hash(("ExtField", self.p, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.deg})"

    def scalar(self, c: int) -> tuple[int, ...]:
        return (c % self.p,) + (0,) * (self.deg - 1)

    def is_zero(self, a: tuple[int, ...]) -> bool:
        return not any(a)

    def add(self, a, b) -> tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b) -> tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b) -> tuple[int, ...]:
        p, d = self.p, self.deg
        if d == 1:
            return (a[0] * b[0] % p,)
        full = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    full[i + j] += x * y
        out = full[:d]
        for t in range(d - 1):
            c = full[d + t] % p
            if c:
                row = self._red_rows[t]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(v % p for v in out)

    def inv(self, a) -> tuple[int, ...]:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        p = self.p

        def polymul(u: list[int], v: list[int]) -> list[int]:
            if not u or not v:
                return []
            out = [0] * (len(u) + len(v) - 1)
            for i, x in enumerate(u):
                if x:
                    for j, y in enumerate(v):
                        out[i + j] = (out[i + j] + x * y) % p
            return out

        def polysub(u: list[int], v: list[int]) -> list[int]:
            n = max(len(u), len(v))
            return _trim([((u[i] if i < len(u) else 0)
                           - (v[i] if i < len(v) else 0)) % p
                          for i in range(n)])

        def polydivmod(u: list[int], v: list[int]) -> tuple[list[int], list[int]]:
            rem = list(u)
            q = [0] * max(1, len(rem) - len(v) + 1)
            vinv = pow(v[-1], p - 2, p)
            while rem and len(rem) >= len(v):
                shift = len(rem) - len(v)
                coef = rem[-1] * vinv % p
                q[shift] = coef
                for i, c in enumerate(v):
                    rem[shift + i] = (rem[shift + i] - coef * c) % p
                rem = _trim(rem)
            return _trim(q), rem

        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = polydivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, polysub(s0, polymul(q, s1))
        # r0 is a nonzero scalar gcd; s0 * a == r0 (mod modulus)
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible")
        scale = pow(r0[0], p - 2, p)
        out = [(c * scale) % p for c in s0]
        out = out[: self.deg] + [0] * max(0, self.deg - len(out))
        return tuple(out)

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a):
        return self.pow(a, self.p)

    def trace(self, a) -> int:
        """Absolute trace down to GF(p), returned as an int in [0, p)."""
        if self._trace_basis is None:
            basis = []
            for i in range(self.deg):
                e = tuple(1 if j == i else 0 for j in range(self.deg))
                t = e
                acc = e
                for _ in range(self.deg - 1):
                    t = self.frobenius(t)
                    acc = self.add(acc, t)
                # absolute trace of a basis element lies in GF(p)
                if any(acc[1:]):
                    raise AssertionError("trace left the prime field")
                basis.append(acc[0])
            self._trace_basis = tuple(basis)
        return sum(c * t for c, t in zip(a, self._trace_basis)) % self.p

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.p), repeat=self.deg)

    def to_index(self, a) -> int:
        idx = 0
        for c in reversed(a):
            idx = idx * self.p + c
        return idx

    def from_index(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.deg):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def is_square(self, a) -> bool:
        if self.p == 2:
            raise ValueError("square test requires odd field order")
        if self.is_zero(a):
            raise ValueError("square test requires a nonzero element")
        return self.pow(a, (self.order - 1) // 2) == self.one

