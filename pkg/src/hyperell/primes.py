"""Primality testing, prime generation and integer factorization.

Inputs in this problem domain are small (primes up to a few million,
discriminants up to a few hundred bits), so trial division plus Brent's
cycle-finding variant of Pollard rho is entirely adequate.
"""

from __future__ import annotations

import math
import random

import numpy as np

# Miller-Rabin with these bases is deterministic for n < 3.3e24, which
# covers the whole range below 2**64.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_PROBABILISTIC_ROUNDS = 64


def _miller_rabin_witness(n: int, a: int) -> bool:
    """Return True if a witnesses compositeness of odd n > 2."""
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 2**64, 64 rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 2**64:
        return not any(_miller_rabin_witness(n, a) for a in _MR_BASES_64)
    rng = random.Random(n)
    return not any(
        _miller_rabin_witness(n, rng.randrange(2, n - 1))
        for _ in range(_PROBABILISTIC_ROUNDS)
    )


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def sigma0_up_to(n: int) -> np.ndarray:
    """Divisor-count table d[0..n] with d[k] = number of divisors of k."""
    d = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        d[i::i] += 1
    return d


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite n (Brent's variant of Pollard rho)."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Full prime factorization of |n| as {prime: exponent}; 0 and ±1 -> {}."""
    n = abs(n)
    if n <= 1:
        return {}
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    rng = random.Random(0xFAC7)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_brent(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(factors.items()))


def ilog(base: int, n: int) -> int:
    """Largest j >= 0 with base**j <= n (n >= 1, base >= 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = 0
    pw = base
    while pw <= n:
        j += 1
        pw *= base
    return j
