"""End-to-end orchestration: curve input to functional-equation report.

A run walks the fixed stage list

    validate -> bad primes -> per-prime reduction analysis -> conductor
    and cutoff -> local factors (bad computed + overrides + good primes
    by point counting) -> Dirichlet coefficients -> theta-based
    functional-equation test

and produces a machine-readable RunReport. Primes where the automatic
semistable analysis does not apply must come with user-supplied
override data (inverse local factor plus conductor exponent); a prime
that is both computable and overridden is a configuration error rather
than a silent preference.

Two input kinds are accepted: the hyperelliptic family
y^2 + h(x)y = g(x), fully automatic at semistable primes, and a cubic
superelliptic plane model y^3 = f(x) for which every bad-candidate
prime (divisors of 3*disc f) must be overridden and good primes are
counted directly.
"""

from __future__ import annotations

import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    ConfigurationError,
    CurveError,
    NotSemistableError,
    ParseError,
)
from .fixtures import Fixture
from .fpoly import reduce_mod
from .intpoly import IntPoly, disc
from .kernel import (
    DEFAULT_PRECISION,
    DEFAULT_TEST_POINTS,
    DEFAULT_TOLERANCE,
    FEReport,
    verify_fe,
)
from .lseries import LSeriesData, choose_M, conductor, dirichlet_coefficients
from .primes import factorize, primes_up_to
from .reduction import (
    BadPrimeReport,
    CurveSpec,
    analyze_bad_prime,
    bad_prime_candidates,
    check_semistable_p2,
    check_semistable_podd,
)
from .zeta import LocalFactorInv, bad_local_factor, cubic_good_local_factor, good_local_factor

log = logging.getLogger(__name__)

_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Override:
    """User-supplied local data for one prime."""

    factor_coeffs: tuple[int, ...]
    f_p: int
    truncated_at: "int | None" = None

    def to_local_factor(self, p: int) -> LocalFactorInv:
        return LocalFactorInv(p, self.factor_coeffs, f_p=self.f_p,
                              truncated_at=self.truncated_at)


@dataclass(frozen=True)
class CurveInput:
    """Parsed and validated run request."""

    kind: str                                   # "hyperelliptic" | "cubic"
    g: "IntPoly | None" = None
    h: "IntPoly | None" = None
    f: "IntPoly | None" = None
    overrides: "dict[int, Override]" = field(default_factory=dict)
    M: "int | None" = None
    precision_bits: "int | None" = None
    tolerance: "float | None" = None

    # -- construction --------------------------------------------------

    @staticmethod
    def hyperelliptic(g: Sequence[int], h: Sequence[int],
                      overrides: "Mapping[int, tuple] | None" = None,
                      M: "int | None" = None,
                      precision_bits: "int | None" = None,
                      tolerance: "float | None" = None) -> "CurveInput":
        return CurveInput(
            kind="hyperelliptic",
            g=IntPoly.of(g),
            h=IntPoly.of(h),
            overrides=_normalize_overrides(overrides or {}),
            M=M,
            precision_bits=precision_bits,
            tolerance=tolerance,
        )

    @staticmethod
    def cubic(f: Sequence[int],
              overrides: "Mapping[int, tuple] | None" = None,
              M: "int | None" = None,
              precision_bits: "int | None" = None,
              tolerance: "float | None" = None) -> "CurveInput":
        return CurveInput(
            kind="cubic",
            f=IntPoly.of(f),
            overrides=_normalize_overrides(overrides or {}),
            M=M,
            precision_bits=precision_bits,
            tolerance=tolerance,
        )

    @staticmethod
    def from_fixture(fx: Fixture) -> "CurveInput":
        if fx.kind == "cubic":
            return CurveInput.cubic(fx.f, overrides=fx.overrides, M=fx.M)
        return CurveInput.hyperelliptic(fx.g, fx.h, overrides=fx.overrides,
                                        M=fx.M)

    # -- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        data: dict = {"version": _SCHEMA_VERSION}
        if self.kind == "cubic":
            data["model"] = {"kind": "cubic",
                             "f": [str(c) for c in self.f.coeffs]}
        else:
            data["g"] = [str(c) for c in self.g.coeffs]
            data["h"] = [str(c) for c in self.h.coeffs]
        if self.overrides:
            data["overrides"] = {
                str(p): {
                    "factor_inv": [str(c) for c in ov.factor_coeffs],
                    "f_p": ov.f_p,
                    **({"truncated_at": ov.truncated_at}
                       if ov.truncated_at is not None else {}),
                }
                for p, ov in sorted(self.overrides.items())
            }
        if self.M is not None:
            data["M"] = self.M
        if self.precision_bits is not None:
            data["precision_bits"] = self.precision_bits
        if self.tolerance is not None:
            data["tolerance"] = self.tolerance
        return data

    @staticmethod
    def from_json_dict(data: dict) -> "CurveInput":
        if not isinstance(data, dict):
            raise ParseError("curve file must contain a JSON object")
        allowed = {"version", "g", "h", "model", "overrides", "M",
                   "precision_bits", "tolerance"}
        unknown = set(data) - allowed
        if unknown:
            raise ParseError(f"unknown fields {sorted(unknown)}")
        if data.get("version") != _SCHEMA_VERSION:
            raise ParseError(
                f"unsupported schema version {data.get('version')!r}"
            )
        try:
            overrides = {}
            for key, ov in data.get("overrides", {}).items():
                extra = set(ov) - {"factor_inv", "f_p", "truncated_at"}
                if extra:
                    raise ParseError(
                        f"overrides[{key}]: unknown fields {sorted(extra)}"
                    )
                overrides[int(key)] = Override(
                    factor_coeffs=tuple(int(c) for c in ov["factor_inv"]),
                    f_p=int(ov["f_p"]),
                    truncated_at=(int(ov["truncated_at"])
                                  if ov.get("truncated_at") is not None
                                  else None),
                )
            M = int(data["M"]) if "M" in data else None
            prec = (int(data["precision_bits"])
                    if "precision_bits" in data else None)
            tol = float(data["tolerance"]) if "tolerance" in data else None
            if "model" in data:
                model = data["model"]
                extra = set(model) - {"kind", "f"}
                if extra:
                    raise ParseError(f"model: unknown fields {sorted(extra)}")
                if model.get("kind") != "cubic":
                    raise ParseError(
                        f"unsupported model kind {model.get('kind')!r}"
                    )
                if "g" in data or "h" in data:
                    raise ParseError("model inputs must not also carry g/h")
                f = IntPoly.of([int(c) for c in model["f"]])
                return CurveInput(kind="cubic", f=f, overrides=overrides,
                                  M=M, precision_bits=prec, tolerance=tol)
            g = IntPoly.of([int(c) for c in data["g"]])
            h = IntPoly.of([int(c) for c in data["h"]])
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"malformed curve file: {exc}") from exc
        return CurveInput(kind="hyperelliptic", g=g, h=h,
                          overrides=overrides, M=M, precision_bits=prec,
                          tolerance=tol)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=1)
            fh.write("\n")

    @staticmethod
    def load(path) -> "CurveInput":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(
                    f"{path}: invalid JSON at byte offset {exc.pos}: "
                    f"{exc.msg}"
                ) from exc
        return CurveInput.from_json_dict(data)


def _normalize_overrides(raw: Mapping) -> dict[int, Override]:
    out: dict[int, Override] = {}
    for p, val in raw.items():
        if isinstance(val, Override):
            out[int(p)] = val
            continue
        coeffs, f_p = val[0], val[1]
        trunc = val[2] if len(val) > 2 else None
        out[int(p)] = Override(tuple(int(c) for c in coeffs), int(f_p), trunc)
    return out


# ---------------------------------------------------------------------------
# run


@dataclass(frozen=True)
class BadPrimeSummary:
    p: int
    source: str                 # "computed" | "override"
    f_p: int
    factor: LocalFactorInv
    detail: "BadPrimeReport | None" = None

    def to_json_dict(self) -> dict:
        out = {
            "p": self.p,
            "source": self.source,
            "f_p": self.f_p,
            "factor_inv": [str(c) for c in self.factor.coeffs],
            "truncated_at": self.factor.truncated_at,
        }
        if self.detail is not None:
            out["singular_locus"] = [
                str(c) for c in self.detail.singular_locus.coeffs
            ]
            out["points"] = [
                {
                    "degree": pt.degree,
                    "epsilon": pt.epsilon,
                    "split_test_in_extension": pt.tested_in_extension,
                }
                for pt in self.detail.points
            ]
            out["genus0"] = self.detail.genus0
        return out


@dataclass(frozen=True)
class RunReport:
    curve: dict
    genus: int
    bad_primes: tuple[BadPrimeSummary, ...]
    conductor: int
    M: int
    coefficient_checksum: str
    fe: FEReport
    timings: dict

    @property
    def verified(self) -> bool:
        return self.fe.verified

    def to_json_dict(self) -> dict:
        notes = []
        for s in self.bad_primes:
            if s.detail is not None and any(
                pt.tested_in_extension for pt in s.detail.points
            ):
                notes.append(
                    f"p={s.p}: split/nonsplit classification evaluated in "
                    f"the residue field of a point of degree > 1"
                )
        return {
            "version": _SCHEMA_VERSION,
            "curve": self.curve,
            "genus": self.genus,
            "bad_primes": [s.to_json_dict() for s in self.bad_primes],
            "conductor": str(self.conductor),
            "M": self.M,
            "coefficient_checksum": self.coefficient_checksum,
            "fe": {
                "verdict": self.fe.verdict,
                "root_number": self.fe.root_number,
                "residuals": {str(w): r for w, r in self.fe.residuals.items()},
                "test_points": list(self.fe.test_points),
                "tolerance": self.fe.tolerance,
                "precision_bits": self.fe.precision,
            },
            "notes": notes,
            "timings_seconds": self.timings,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=1)
            fh.write("\n")


class _StageClock:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def stage(self, name: str):
        clock = self

        class _Timer:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                clock.timings[name] = round(
                    time.perf_counter() - self.t0, 6
                )

        return _Timer()


def _hyperelliptic_bad_data(curve: CurveSpec,
                            overrides: dict[int, Override],
                            seed: int):
    """Analyze all bad primes; returns (reports, conductor, candidates)."""
    candidates = bad_prime_candidates(curve)
    stray = sorted(set(overrides) - set(candidates))
    if stray:
        raise ConfigurationError(
            f"overrides given for primes {stray} at which the curve has "
            f"good reduction"
        )
    reports: dict[int, BadPrimeReport] = {}
    for p in candidates:
        semistable = (check_semistable_p2(curve) if p == 2
                      else check_semistable_podd(curve, p))
        if p in overrides:
            if semistable:
                raise ConfigurationError(
                    f"p={p} is semistable and computable, but an override "
                    f"was also supplied; exactly one data source is allowed"
                )
            continue
        if not semistable:
            raise NotSemistableError(
                p,
                "gcd(hbar, hbar', gbar') != 1" if p == 2
                else "gcd(fbar, fbar', fbar'') != 1",
            )
        reports[p] = analyze_bad_prime(curve, p, seed=seed)

    N = conductor(
        [(p, r.f_p) for p, r in reports.items()]
        + [(p, ov.f_p) for p, ov in overrides.items()]
    )
    return reports, N, candidates


def run(curve_input: CurveInput,
        threads: int = 1,
        cache_path=None,
        test_points: Sequence[float] = DEFAULT_TEST_POINTS,
        seed: int = 0) -> RunReport:
    """Execute the full pipeline for one curve."""
    clock = _StageClock()
    precision = curve_input.precision_bits or DEFAULT_PRECISION
    tolerance = curve_input.tolerance or DEFAULT_TOLERANCE
    t_lo = min(min(t, 1.0 / t) for t in test_points)

    with clock.stage("validate"):
        if curve_input.kind == "hyperelliptic":
            curve = CurveSpec.from_polynomials(curve_input.g, curve_input.h)
            genus = curve.genus
        elif curve_input.kind == "cubic":
            f = curve_input.f
            if f.is_zero or f.degree < 2 or f.degree % 3 == 0:
                raise CurveError(
                    "cubic model needs deg f >= 2 and coprime to 3"
                )
            if disc(f) == 0:
                raise CurveError("cubic model needs a separable f")
            genus = f.degree - 1
            curve = None
        else:
            raise CurveError(f"unknown input kind {curve_input.kind!r}")

    with clock.stage("bad_primes"):
        if curve_input.kind == "hyperelliptic":
            reports, N, candidates = _hyperelliptic_bad_data(
                curve, curve_input.overrides, seed
            )
        else:
            candidates = sorted(
                set(factorize(3 * disc(curve_input.f)))
            )
            missing = sorted(set(candidates) - set(curve_input.overrides))
            if missing:
                raise NotSemistableError(
                    missing[0],
                    "no automatic reduction analysis for cubic models",
                )
            stray = sorted(set(curve_input.overrides) - set(candidates))
            if stray:
                raise ConfigurationError(
                    f"overrides given for primes {stray} at which the "
                    f"model has good reduction"
                )
            reports = {}
            N = conductor(
                [(p, ov.f_p) for p, ov in curve_input.overrides.items()]
            )

    M = curve_input.M or choose_M(N, genus, target_digits=12, t=t_lo)

    cached = _load_cache(cache_path, genus, N, M)
    if cached is not None:
        series = cached
        clock.timings["bad_factors"] = 0.0
        clock.timings["counting"] = 0.0
        clock.timings["coefficients"] = 0.0
        bad_summaries = _summaries_from_cache(series, reports,
                                              curve_input.overrides)
    else:
        with clock.stage("bad_factors"):
            factors: dict[int, LocalFactorInv] = {}
            bad_summaries = []
            for p in candidates:
                if p in curve_input.overrides:
                    lf = curve_input.overrides[p].to_local_factor(p)
                    bad_summaries.append(BadPrimeSummary(
                        p=p, source="override", f_p=lf.f_p, factor=lf,
                    ))
                else:
                    rep = reports[p]
                    lf = bad_local_factor(rep, M)
                    rep = rep.with_factor(lf)
                    bad_summaries.append(BadPrimeSummary(
                        p=p, source="computed", f_p=rep.f_p, factor=lf,
                        detail=rep,
                    ))
                if p <= M:
                    factors[p] = lf

        with clock.stage("counting"):
            bad_set = set(candidates)
            good = [p for p in primes_up_to(M) if p not in bad_set]
            if curve_input.kind == "cubic":
                fbars = {p: reduce_mod(curve_input.f, p) for p in good}

                def factor_at(p):
                    return cubic_good_local_factor(fbars[p], genus, p, M)
            else:
                def factor_at(p):
                    return good_local_factor(curve, p, M)

            if threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    for p, lf in zip(good, pool.map(factor_at, good)):
                        factors[p] = lf
            else:
                for p in good:
                    factors[p] = factor_at(p)

        with clock.stage("coefficients"):
            a = dirichlet_coefficients(factors, M)
            series = LSeriesData(
                genus=genus, conductor=N, M=M,
                coefficients=tuple(a), factors=factors,
            )
        if cache_path is not None:
            series.save(cache_path)

    with clock.stage("fe_check"):
        fe = verify_fe(series, test_points=test_points,
                       tolerance=tolerance, precision=precision)

    return RunReport(
        curve=curve_input.to_json_dict(),
        genus=genus,
        bad_primes=tuple(bad_summaries),
        conductor=N,
        M=M,
        coefficient_checksum=series.coefficient_checksum(),
        fe=fe,
        timings=clock.timings,
    )


def _load_cache(cache_path, genus: int, N: int, M: int):
    if cache_path is None:
        return None
    try:
        with open(cache_path, "r", encoding="utf-8"):
            pass
    except OSError:
        return None
    series = LSeriesData.load(cache_path)
    if (series.genus, series.conductor, series.M) != (genus, N, M):
        log.warning("cache %s does not match this run; recomputing",
                    cache_path)
        return None
    return series


def _summaries_from_cache(series: LSeriesData,
                          reports: dict[int, BadPrimeReport],
                          overrides: dict[int, Override]):
    out = []
    for p, rep in sorted(reports.items()):
        lf = series.factors.get(p)
        if lf is None:
            lf = bad_local_factor(rep, series.M)
        out.append(BadPrimeSummary(
            p=p, source="computed", f_p=rep.f_p, factor=lf,
            detail=rep.with_factor(lf),
        ))
    for p, ov in sorted(overrides.items()):
        out.append(BadPrimeSummary(
            p=p, source="override", f_p=ov.f_p,
            factor=ov.to_local_factor(p),
        ))
    out.sort(key=lambda s: s.p)
    return out


# ---------------------------------------------------------------------------
# curve search


def search(genus: int, coeff_bound: int, max_conductor: int, count: int,
           seed: int = 0, budget: int = 200_000) -> list[CurveInput]:
    """Rejection-sample curves that are semistable at every prime.

    Draws (g, h) uniformly within the coefficient bound, keeps curves
    passing every semistability test whose conductor is at most
    max_conductor, and stops after `count` hits or `budget` draws
    (returning a partial list with a warning in the latter case).
    Deterministic for a fixed seed.
    """
    if genus < 2:
        raise ValueError("search requires genus >= 2")
    if coeff_bound < 1:
        raise ValueError("coefficient bound must be >= 1")
    rng = random.Random(seed)
    found: list[CurveInput] = []
    for _ in range(budget):
        if len(found) >= count:
            break
        g_coeffs = [rng.randint(-coeff_bound, coeff_bound)
                    for _ in range(2 * genus + 1)] + [1]
        h_coeffs = [rng.randint(-coeff_bound, coeff_bound)
                    for _ in range(genus + 1)]
        try:
            curve = CurveSpec.from_polynomials(IntPoly.of(g_coeffs),
                                               IntPoly.of(h_coeffs))
        except CurveError:
            continue
        if not check_semistable_p2(curve):
            continue
        candidates = bad_prime_candidates(curve)
        if any(p != 2 and not check_semistable_podd(curve, p)
               for p in candidates):
            continue
        N = 1
        ok = True
        for p in candidates:
            rep = analyze_bad_prime(curve, p)
            N *= p**rep.f_p
            if N > max_conductor:
                ok = False
                break
        if not ok or N > max_conductor:
            continue
        found.append(CurveInput.hyperelliptic(curve.g.coeffs,
                                              curve.h.coeffs))
    else:
        if len(found) < count:
            log.warning(
                "search budget %d exhausted with %d/%d curves found",
                budget, len(found), count,
            )
    return found
