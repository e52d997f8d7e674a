"""Zeta numerators from point counts, and local L-factor assembly.

For a smooth projective absolutely irreducible curve C/GF(q) of genus
g0, the numerator P(T) = 1 + c_1 T + ... + c_{2g0} T^{2g0} of the zeta
function is recovered from the counts N_n = |C(GF(q^n))| through the
power sums S_n = q^n + 1 - N_n of the reciprocal roots (Newton's
identities), and the Weil symmetry c_{2g0-i} = q^{g0-i} c_i fills the
upper half from the lower, so counts for n <= g0 suffice. When only a
truncation of P is needed (coefficient cutoff M), counts stop at the
truncation degree instead.

All coefficient arithmetic is exact; a non-integer coefficient aborts
loudly since it always means a counting bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .counting import count_char2, count_cubic, count_odd
from .errors import DataIntegrityError, InsufficientDataError
from .fpoly import FPoly, reduce_mod
from .primes import ilog


@dataclass(frozen=True)
class CountVector:
    """Point counts N_1..N_m of a fixed curve over GF(q^n), n = 1..m."""

    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(n < 0 for n in self.counts):
            raise ValueError("point counts cannot be negative")


@dataclass(frozen=True)
class ZetaNumerator:
    """P(T) = det(1 - T Frob | H^1), possibly truncated.

    coeffs holds c_0..c_d in ascending order; truncated_at is None for
    a complete degree-2*genus polynomial, otherwise the last valid
    degree.
    """

    coeffs: tuple[int, ...]
    q: int
    genus: int
    truncated_at: "int | None"

    @property
    def complete(self) -> bool:
        return self.truncated_at is None

    def check_weil_symmetry(self) -> None:
        if not self.complete:
            raise ValueError("symmetry only holds for complete numerators")
        g, q = self.genus, self.q
        for i in range(g + 1):
            if self.coeffs[2 * g - i] != q ** (g - i) * self.coeffs[i]:
                raise DataIntegrityError(
                    f"zeta numerator violates the Weil symmetry at i={i}"
                )

    def reciprocal_root_moduli(self) -> list[float]:
        """|alpha| for each reciprocal root alpha (numeric)."""
        if not self.complete:
            raise ValueError("need the complete numerator")
        if self.genus == 0:
            return []
        roots = np.roots(list(reversed(self.coeffs)))
        return [1.0 / abs(r) for r in roots]

    def check_weil_bound(self, rel_tol: float = 1e-6) -> None:
        """Every reciprocal root must have modulus sqrt(q)."""
        target = math.sqrt(self.q)
        for m in self.reciprocal_root_moduli():
            if abs(m - target) > rel_tol * target:
                raise DataIntegrityError(
                    f"reciprocal root of modulus {m}, expected {target}"
                )


@dataclass(frozen=True)
class LocalFactorInv:
    """Inverse local factor: integer polynomial in T = p^{-s}.

    For good or bad semistable primes the complete degree is
    2*genus - f_p; overrides may break that relation, which is why the
    degree is never inferred from f_p or vice versa.
    """

    p: int
    coeffs: tuple[int, ...]
    f_p: int
    truncated_at: "int | None" = None

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("inverse local factor must have constant term 1")
        if self.f_p < 0:
            raise ValueError("conductor exponent cannot be negative")

    @property
    def complete(self) -> bool:
        return self.truncated_at is None

    def valid_degree(self) -> "int | float":
        return math.inf if self.complete else self.truncated_at

    def reciprocal_series(self, k: int) -> list[int]:
        """b_0..b_k with sum b_j T^j = 1 / (sum coeffs T^i) mod T^{k+1}."""
        if not self.complete and self.truncated_at < k:
            raise InsufficientDataError(self.p, k, self.truncated_at)
        b = [0] * (k + 1)
        b[0] = 1
        c = self.coeffs
        for j in range(1, k + 1):
            acc = 0
            for i in range(1, min(j, len(c) - 1) + 1):
                acc += c[i] * b[j - i]
            b[j] = -acc
        return b


def power_sums_from_counts(counts: Sequence[int], q: int) -> list[int]:
    """S_n = q^n + 1 - N_n, the reciprocal-root power sums."""
    return [q**n + 1 - N for n, N in enumerate(counts, start=1)]


def zeta_numerator_from_counts(
    counts: "CountVector | Sequence[int]",
    genus: int,
    q: int,
    use_symmetry: bool = True,
    truncate_at: "int | None" = None,
) -> ZetaNumerator:
    """Recover P(T) from point counts.

    counts must reach degree min(genus, truncate_at) when the symmetry
    shortcut is on, or 2*genus without it. Extra counts are used to
    cross-check. A truncation below 2*genus yields a truncated result.
    """
    if isinstance(counts, CountVector):
        if counts.q != q:
            raise ValueError("count vector is for a different field")
        counts = counts.counts
    counts = list(counts)
    if genus < 0:
        raise ValueError("genus cannot be negative")
    if genus == 0:
        return ZetaNumerator((1,), q, 0, None)

    full_degree = 2 * genus
    if truncate_at is not None and (
        truncate_at >= full_degree or (use_symmetry and truncate_at >= genus)
    ):
        # enough information for the symmetry to complete the polynomial
        truncate_at = None
    if truncate_at is None:
        need = genus if use_symmetry else full_degree
    else:
        need = min(truncate_at, genus if use_symmetry else full_degree)
    if len(counts) < need:
        raise ValueError(
            f"need at least {need} counts, got {len(counts)}"
        )

    S = power_sums_from_counts(counts, q)
    upto = min(len(S), full_degree) if truncate_at is None else min(
        len(S), truncate_at
    )
    c: list[Fraction] = [Fraction(1)]
    for k in range(1, upto + 1):
        if k > len(S):
            break
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += S[i - 1] * c[k - i]
        c.append(-acc / k)
    ints = []
    for v in c:
        if v.denominator != 1:
            raise DataIntegrityError(
                "Newton recovery produced a non-integer zeta coefficient; "
                "the point counts are inconsistent"
            )
        ints.append(int(v))

    if truncate_at is not None:
        zn = ZetaNumerator(tuple(ints[: truncate_at + 1]), q, genus,
                           truncate_at)
        return zn

    if len(ints) >= genus + 1:
        coeffs = ints[: full_degree + 1]
        # fill the upper half by symmetry
        while len(coeffs) < full_degree + 1:
            coeffs.append(0)
        for i in range(genus + 1):
            expected = q ** (genus - i) * coeffs[i]
            j = full_degree - i
            if len(ints) > j:
                if ints[j] != expected:
                    raise DataIntegrityError(
                        "counts beyond the genus contradict the Weil "
                        "symmetry; counting bug"
                    )
            coeffs[j] = expected
        zn = ZetaNumerator(tuple(coeffs), q, genus, None)
        zn.check_weil_symmetry()
        return zn
    raise ValueError("insufficient counts for a complete numerator")


def unit_product_poly(points: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """prod over (degree d, sign eps) of (1 - eps*T^d), ascending coeffs."""
    out = [1]
    for d, eps in points:
        nxt = [0] * (len(out) + d)
        for i, a in enumerate(out):
            nxt[i] += a
            nxt[i + d] -= eps * a
        out = nxt
    return tuple(out)


def poly_mul_trunc(a: Sequence[int], b: Sequence[int],
                   trunc: "int | None") -> tuple[int, ...]:
    n = len(a) + len(b) - 1
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if trunc is not None:
        out = out[: trunc + 1]
    return tuple(out)


# ---------------------------------------------------------------------------
# local factors


def _counts_for(model_count, genus0: int, j: int) -> list[int]:
    """Counts N_n for n = 1..min(genus0, j)."""
    return [model_count(n) for n in range(1, min(genus0, j) + 1)]


def good_local_factor(curve, p: int, M: int) -> LocalFactorInv:
    """Inverse local factor at a good prime, truncated per the cutoff M.

    Only coefficients of T^j with p^j <= M can ever be consumed by the
    Dirichlet expansion, so point counting stops at extension degree
    min(genus, floor(log_p M)) and the result is marked truncated when
    that cap bites before the symmetry shortcut completes the
    polynomial.
    """
    g = curve.genus
    j = ilog(p, M)
    if j < 1:
        raise ValueError(f"prime {p} exceeds the cutoff {M}")
    if p == 2:
        hbar = reduce_mod(curve.h, 2)
        gbar = reduce_mod(curve.g, 2)
        counts = _counts_for(lambda n: count_char2(hbar, gbar, n), g, j)
    else:
        fbar = reduce_mod(curve.f, p)
        counts = _counts_for(lambda n: count_odd(fbar, n), g, j)
    zn = zeta_numerator_from_counts(
        counts, g, p, truncate_at=None if j >= g else j
    )
    return LocalFactorInv(p, zn.coeffs, f_p=0, truncated_at=zn.truncated_at)


def bad_local_factor(report, M: int) -> LocalFactorInv:
    """Inverse local factor at a bad semistable prime.

    The numerator of the (singular) reduction is the numerator of its
    normalization times one unit factor (1 - eps*T^d) per singular
    point; the conductor exponent is the total degree of those factors.
    """
    p = report.p
    j = ilog(p, M) if M is not None else 10**9
    g0 = report.genus0
    norm = report.normalization
    if norm.kind == "char2":
        counts = _counts_for(
            lambda n: count_char2(norm.h_new, norm.g_new, n), g0, j
        )
    else:
        counts = _counts_for(lambda n: count_odd(norm.s, n), g0, j)
    zn = zeta_numerator_from_counts(
        counts, g0, p, truncate_at=None if j >= g0 else j
    )
    units = unit_product_poly(
        [(pt.degree, pt.epsilon) for pt in report.points]
    )
    trunc = None if zn.complete else zn.truncated_at
    coeffs = poly_mul_trunc(zn.coeffs, units, trunc)
    return LocalFactorInv(p, coeffs, f_p=report.f_p, truncated_at=trunc)


def cubic_good_local_factor(f: FPoly, genus: int, p: int,
                            M: int) -> LocalFactorInv:
    """Inverse local factor of y^3 = f(x) at a good prime."""
    j = ilog(p, M)
    if j < 1:
        raise ValueError(f"prime {p} exceeds the cutoff {M}")
    counts = _counts_for(lambda n: count_cubic(f, n), genus, j)
    zn = zeta_numerator_from_counts(
        counts, genus, p, truncate_at=None if j >= genus else j
    )
    return LocalFactorInv(p, zn.coeffs, f_p=0, truncated_at=zn.truncated_at)
