"""Fixture regression suite behind `hyperell selftest`.

Checks every built-in fixture's bad-prime data (inverse local factor
coefficients, conductor exponents, conductor) against the stored
expectations, plus two kernel spot identities. `--full` additionally
runs one complete functional-equation verification.
"""

from __future__ import annotations

import math
import time

import gmpy2

from .fixtures import ALL_FIXTURES, GENUS3_FOUR_BAD, Fixture
from .kernel import phi_g
from .pipeline import CurveInput, run
from .reduction import CurveSpec, analyze_bad_prime, bad_prime_candidates
from .zeta import bad_local_factor


def _check(label: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail and not ok else ""
    print(f"[{status}] {label}{suffix}")
    return ok


def _fixture_bad_data(fx: Fixture) -> list[tuple[str, bool, str]]:
    results = []
    curve = CurveSpec.from_polynomials(fx.g_poly(), fx.h_poly())
    cands = bad_prime_candidates(curve)
    expected_primes = sorted(set(fx.expected_factors) | set(fx.overrides))
    results.append((
        f"{fx.name}: bad primes {expected_primes}",
        sorted(cands) == expected_primes,
        f"got {sorted(cands)}",
    ))
    N = 1
    for p in cands:
        if p in fx.overrides:
            N *= p ** fx.overrides[p][1]
            continue
        rep = analyze_bad_prime(curve, p)
        N *= p**rep.f_p
        want_coeffs, want_fp, trunc = fx.expected_factors[p]
        lf = bad_local_factor(rep, fx.M or 10**7)
        got = lf.coeffs if trunc is None else lf.coeffs[: trunc + 1]
        results.append((
            f"{fx.name}: p={p} factor",
            got == tuple(want_coeffs) and rep.f_p == want_fp,
            f"got {got} f_p={rep.f_p}",
        ))
    results.append((
        f"{fx.name}: conductor {fx.conductor}",
        N == fx.conductor,
        f"got {N}",
    ))
    return results


def run_selftest(full: bool = False) -> bool:
    t0 = time.perf_counter()
    ok = True

    # kernel identities
    v = phi_g(1.25, 1, 200)
    ref = gmpy2.exp(gmpy2.mpfr(-1.25, 250))
    ok &= _check("kernel: phi_1 = exp(-x) at x=1.25",
                 abs(float(v - ref)) < 1e-40)
    v = phi_g(1.0, 2, 200)
    ok &= _check("kernel: phi_2(1) = 2*K0(2)",
                 abs(float(v) - 0.2277528119207671) < 1e-12)

    for fx in ALL_FIXTURES:
        if fx.kind != "hyperelliptic":
            continue
        for label, good, detail in _fixture_bad_data(fx):
            ok &= _check(label, good, detail)

    if full:
        fx = GENUS3_FOUR_BAD
        report = run(CurveInput.from_fixture(fx))
        ok &= _check(
            f"{fx.name}: functional equation verified with root "
            f"{fx.root_number}",
            report.fe.verified and report.fe.root_number == fx.root_number,
            f"verdict {report.fe.verdict}, root {report.fe.root_number}",
        )

    print(f"selftest {'passed' if ok else 'FAILED'} "
          f"in {time.perf_counter() - t0:.1f}s")
    return ok
