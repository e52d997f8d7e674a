"""Conductor, coefficient cutoff, and Dirichlet coefficients.

The truncated Dirichlet series needs a_n for n <= M, where M is chosen
so that the neglected tail of the theta sum is below the verification
tolerance. Tail terms are bounded by B(n) * phi_bound(x_n):

  * choose_M uses the deliberately crude coefficient bound
    B(n) = n * sigma0(n)^(2g); it only ever costs a somewhat larger M.
  * the admission check applied when a caller forces its own M uses the
    Weil consequence |a_n| <= d_{2g}(n) * sqrt(n) with the
    2g-dimensional divisor function computed exactly on the tail window
    by a segmented factorization sieve; anything cruder rejects
    known-good reproduction cutoffs at genus >= 3.

phi_bound is a float overestimate of the inverse-Mellin kernel (its
exact leading asymptotics times a safety factor of 4 for x >= 1, a
logarithmic envelope below); everything in this module is exact integer
arithmetic except these tail heuristics.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import ConfigurationError, InsufficientDataError, ParseError
from .primes import ilog, primes_up_to
from .zeta import LocalFactorInv

_SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# tail heuristics (float arithmetic only)


def _log_phi_bound(x: np.ndarray, g: int) -> np.ndarray:
    """ln of an upper bound for phi_g(x).

    For x >= 1 the saddle-point asymptotics
    (2pi)^((g-1)/2) g^(-1/2) x^((1-g)/(2g)) exp(-g x^(1/g)) hold with
    relative corrections O(x^(-1/g)); a factor 4 absorbs them over the
    range used here. Below 1 the kernel grows like |ln x|^(g-1)/(g-1)!.
    """
    x = np.asarray(x, dtype=np.float64)
    lx = np.log(x)
    decay = -g * x ** (1.0 / g)
    logc = math.log(4.0) + 0.5 * (g - 1) * math.log(2 * math.pi) \
        - 0.5 * math.log(g)
    large = logc + (1.0 - g) / (2.0 * g) * lx + decay
    small = math.log(4.0) + (g - 1) * np.log1p(np.abs(lx)) + decay
    return np.where(x >= 1.0, large, small)


_DR_MAX_EXP = 64


def _dr_range(lo: int, hi: int, r: int) -> np.ndarray:
    """d_r(n) for n in [lo, hi): r-dimensional divisor function, exact.

    Segmented sieve: divide out each prime up to sqrt(hi) and apply the
    multiplicative rule d_r(p^k) = C(k+r-1, r-1); a leftover cofactor
    above 1 is a single prime to the first power.
    """
    width = hi - lo
    rem = np.arange(lo, hi, dtype=np.int64)
    dval = np.ones(width, dtype=np.float64)
    binom = np.array(
        [math.comb(k + r - 1, r - 1) for k in range(_DR_MAX_EXP)],
        dtype=np.float64,
    )
    for p in primes_up_to(math.isqrt(max(hi - 1, 1))):
        first = ((lo + p - 1) // p) * p
        if first >= hi:
            continue
        idx = np.arange(first - lo, width, p)
        sub = rem[idx]
        k = np.zeros(len(idx), dtype=np.int64)
        while True:
            div = sub % p == 0
            if not div.any():
                break
            sub[div] //= p
            k[div] += 1
        rem[idx] = sub
        dval[idx] *= binom[k]
    dval[rem > 1] *= r
    return dval


def _sigma0_range(a: int, b: int) -> np.ndarray:
    """sigma0(n) for n in [a, b), by a segmented divisor-pair sieve."""
    out = np.zeros(b - a, dtype=np.int64)
    for i in range(1, math.isqrt(b - 1) + 1):
        start = max(a, i * i)
        first = ((start + i - 1) // i) * i
        if first < b:
            out[first - a :: i] += 2
        sq = i * i
        if a <= sq < b:
            out[sq - a] -= 1
    return out


def _tail_terms(N: int, genus: int, t: float, lo: int, hi: int,
                sharp: bool) -> np.ndarray:
    """log10 of the bound terms for n in [lo, hi).

    sharp=False uses the crude n * sigma0(n)^(2g) coefficient bound
    (cutoff selection); sharp=True uses the exact d_{2g}(n) * sqrt(n)
    Weil bound (cutoff admission).
    """
    n = np.arange(lo, hi, dtype=np.float64)
    x = (2 * math.pi) ** genus * n * t / math.sqrt(N)
    if sharp:
        log_b = np.log(_dr_range(lo, hi, 2 * genus)) + 0.5 * np.log(n)
    else:
        sigma0 = _sigma0_range(lo, hi).astype(np.float64)
        log_b = 2 * genus * np.log(sigma0) + np.log(n)
    return (log_b + _log_phi_bound(x, genus)) / math.log(10)


def tail_bound(N: int, genus: int, M: int, t: float = 1.0,
               sharp: bool = True) -> float:
    """Upper estimate of sum_{n>M} B(n) * phi_g((2pi)^g n t / sqrt(N))."""
    if M < 1:
        raise ValueError("M must be >= 1")
    total = 0.0
    lo = M + 1
    chunk = max(4096, M // 4)
    floor_log10 = -400.0
    while True:
        hi = lo + chunk
        logs = _tail_terms(N, genus, t, lo, hi, sharp)
        total += float(np.sum(10.0 ** np.maximum(logs, floor_log10)
                              * (logs > floor_log10)))
        # terms decay superpolynomially; stop once the last chunk is dwarfed
        if logs[-1] < math.log10(max(total, 1e-320)) - 30 and logs[-1] < -40:
            break
        lo = hi
        if lo > max(1 << 34, 100 * M):
            raise ValueError("tail does not converge in a sane range")
    return total


def choose_M(N: int, genus: int, target_digits: int = 12,
             t: float = 1.0) -> int:
    """Smallest M whose estimated theta tail is below 10^-target_digits.

    Monotone in N and in target_digits. The tail is evaluated at scale
    argument t (callers verifying at test points below 1 pass the
    smallest one).
    """
    if N < 1:
        raise ValueError("conductor must be positive")
    target = -float(target_digits)
    hi = 1 << 10
    while True:
        logs = _tail_terms(N, genus, t, 1, hi + 1, sharp=False)
        if logs[-1] < target - 25 and logs[-1] < logs[len(logs) // 2]:
            break
        hi *= 2
        if hi > 1 << 34:
            raise ValueError("cutoff search exceeded a sane range")
    terms = 10.0 ** np.maximum(logs, -380.0)
    suffix = np.cumsum(terms[::-1])[::-1]
    below = np.nonzero(suffix < 10.0**target)[0]
    if len(below) == 0:
        raise ValueError("tail target unreachable in the scanned range")
    # suffix[i] bounds the tail beyond n = i (terms are 1-based in n)
    return max(1, int(below[0]))


def required_M(N: int, genus: int, t: float, tol: float) -> int:
    """Smallest M accepted by the sharp tail check at tolerance tol."""
    digits = max(1, int(math.ceil(-math.log10(tol))))
    hi = 1 << 10
    target = math.log10(tol)
    while True:
        logs = _tail_terms(N, genus, t, 1, hi + 1, sharp=True)
        if logs[-1] < target - 25 and logs[-1] < logs[len(logs) // 2]:
            break
        hi *= 2
        if hi > 1 << 34:
            raise ValueError("cutoff search exceeded a sane range")
    terms = 10.0 ** np.maximum(logs, -380.0)
    suffix = np.cumsum(terms[::-1])[::-1]
    below = np.nonzero(suffix < tol)[0]
    if len(below) == 0:
        raise ValueError("tolerance unreachable in the scanned range")
    return max(1, int(below[0]))


# ---------------------------------------------------------------------------
# exact assembly


def conductor(sources: Iterable[tuple[int, int]]) -> int:
    """prod p^{f_p} over bad primes given as (p, f_p) pairs.

    Each bad prime must come from exactly one source; duplicates are a
    configuration error, not a silent overwrite.
    """
    seen: dict[int, int] = {}
    for p, f_p in sources:
        if p in seen:
            raise ConfigurationError(
                f"two local-data sources for p={p}"
            )
        if f_p < 0:
            raise ConfigurationError(f"negative conductor exponent at p={p}")
        seen[p] = f_p
    N = 1
    for p, f_p in seen.items():
        N *= p**f_p
    return N


def dirichlet_coefficients(factors: Mapping[int, LocalFactorInv],
                           M: int) -> list[int]:
    """a_1..a_M from the per-prime inverse factors, as a list indexed by n.

    Index 0 is unused (zero). Every prime up to M must have an entry
    whose polynomial is valid to degree floor(log_p M).
    """
    a: list[int] = [0] * (M + 1)
    a[1] = 1
    for p in primes_up_to(M):
        k = ilog(p, M)
        if p not in factors:
            raise InsufficientDataError(p, k, -1)
        b = factors[p].reciprocal_series(k)
        pv = p
        v = 1
        while pv <= M:
            bv = b[v]
            if bv:
                for m in range(1, M // pv + 1):
                    if m % p and a[m]:
                        a[m * pv] = bv * a[m]
            pv *= p
            v += 1
    return a


@dataclass(frozen=True)
class LSeriesData:
    """Everything the functional-equation check consumes."""

    genus: int
    conductor: int
    M: int
    coefficients: tuple[int, ...]  # index n, [0] unused
    factors: "dict[int, LocalFactorInv]"

    def __post_init__(self):
        if len(self.coefficients) != self.M + 1:
            raise ValueError("coefficient table must have M+1 entries")
        if self.M >= 1 and self.coefficients[1] != 1:
            raise ValueError("a_1 must be 1")

    def coefficient_checksum(self) -> str:
        hasher = hashlib.sha256()
        for n in range(1, self.M + 1):
            hasher.update(f"{n}:{self.coefficients[n]}\n".encode())
        return hasher.hexdigest()

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "version": _SCHEMA_VERSION,
            "genus": self.genus,
            "conductor": str(self.conductor),
            "M": self.M,
            "factors": {
                str(p): {
                    "coeffs": [str(c) for c in lf.coeffs],
                    "f_p": lf.f_p,
                    "truncated_at": lf.truncated_at,
                }
                for p, lf in sorted(self.factors.items())
            },
            "coefficients": [str(self.coefficients[n])
                             for n in range(1, self.M + 1)],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "LSeriesData":
        _expect_keys(data, {"version", "genus", "conductor", "M",
                            "factors", "coefficients"}, "series")
        if data["version"] != _SCHEMA_VERSION:
            raise ParseError(f"unsupported schema version {data['version']!r}")
        try:
            genus = int(data["genus"])
            N = int(data["conductor"])
            M = int(data["M"])
            factors = {}
            for key, fd in data["factors"].items():
                _expect_keys(fd, {"coeffs", "f_p", "truncated_at"},
                             f"factors[{key}]")
                factors[int(key)] = LocalFactorInv(
                    p=int(key),
                    coeffs=tuple(int(c) for c in fd["coeffs"]),
                    f_p=int(fd["f_p"]),
                    truncated_at=(None if fd["truncated_at"] is None
                                  else int(fd["truncated_at"])),
                )
            coeffs = [0] + [int(c) for c in data["coefficients"]]
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"malformed series file: {exc}") from exc
        if len(coeffs) != M + 1:
            raise ParseError("coefficient list length differs from M")
        return LSeriesData(
            genus=genus, conductor=N, M=M,
            coefficients=tuple(coeffs), factors=factors,
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh)
            fh.write("\n")

    @staticmethod
    def load(path) -> "LSeriesData":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(
                    f"{path}: invalid JSON at byte offset {exc.pos}: "
                    f"{exc.msg}"
                ) from exc
        return LSeriesData.from_json_dict(data)


def _expect_keys(d: dict, allowed: set, where: str) -> None:
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(d) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
