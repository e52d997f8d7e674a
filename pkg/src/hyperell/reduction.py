"""Semistability analysis and bad-prime local data.

For a curve y^2 + h(x)y = g(x) with g monic of degree 2*genus+1,
deg h <= genus, h not identically even, and f = 4g + h^2 separable, the
reduction mod p is semistable exactly when

    p = 2 :  hbar != 0 and gcd(hbar, hbar', gbar') = 1
    p odd:   fbar has at most double roots, i.e. gcd(fbar, fbar', fbar'') = 1

At a bad semistable prime the singular locus is cut out by a separable
polynomial: each of its irreducible factors is one ordinary double
point, of degree the factor degree, split or nonsplit according to a
residue-field criterion; the conductor exponent is the degree of the
locus polynomial, and a smooth plane model of the normalization comes
with it. Everything here is exact field arithmetic; the counting
happens elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import CurveError, InternalConsistencyError, NotSemistableError
from .field import ExtField, PrimeField
from .fpoly import (
    FPoly,
    factor,
    gcd_many,
    gcd_poly,
    is_square,
    quad_solutions,
    reduce_mod,
    sqrt_mod,
)
from .intpoly import IntPoly, curve_rhs, disc
from .primes import factorize

if TYPE_CHECKING:
    from .zeta import LocalFactorInv


@dataclass(frozen=True)
class CurveSpec:
    """Validated defining data (g, h) plus derived f = 4g + h^2."""

    g: IntPoly
    h: IntPoly
    genus: int
    f: IntPoly
    discriminant: int

    @staticmethod
    def from_polynomials(g: IntPoly, h: IntPoly) -> "CurveSpec":
        if g.is_zero or g.degree < 5 or g.degree % 2 == 0:
            raise CurveError("g must have odd degree 2*genus+1 with genus >= 2")
        if not g.is_monic:
            raise CurveError("g must be monic")
        genus = (g.degree - 1) // 2
        if not h.is_zero and h.degree > genus:
            raise CurveError(f"deg h must be at most the genus {genus}")
        if all(c % 2 == 0 for c in h.coeffs):
            raise CurveError("h must not vanish mod 2")
        f = curve_rhs(g, h)
        d = disc(f)
        if d == 0:
            raise CurveError("f = 4g + h^2 has a multiple root")
        return CurveSpec(g=g, h=h, genus=genus, f=f, discriminant=d)


@dataclass(frozen=True)
class SingularPoint:
    """One ordinary double point of the reduction.

    min_poly cuts the point out of the singular locus; degree is its
    residue degree; epsilon is +1 for a split node and -1 for a
    nonsplit one. The split test is evaluated in the residue field of
    the point, which is an extension when degree > 1.
    """

    min_poly: FPoly
    degree: int
    epsilon: int

    @property
    def tested_in_extension(self) -> bool:
        return self.degree > 1


@dataclass(frozen=True)
class NormalizationEq:
    """Smooth plane model of the normalization of the reduction.

    kind "char2": y^2 + h_new(x)*y = g_new(x); kind "odd": v^2 = s(x)
    with s carrying the leading unit of fbar so that fbar = locus^2 * s
    holds exactly.
    """

    kind: str
    h_new: "FPoly | None" = None
    g_new: "FPoly | None" = None
    s: "FPoly | None" = None


@dataclass(frozen=True)
class BadPrimeReport:
    """Complete local data at a bad semistable prime."""

    p: int
    singular_locus: FPoly
    points: tuple[SingularPoint, ...]
    normalization: NormalizationEq
    f_p: int
    genus0: int
    local_factor_inv: "LocalFactorInv | None" = None

    def with_factor(self, factor_inv: "LocalFactorInv") -> "BadPrimeReport":
        return BadPrimeReport(
            p=self.p,
            singular_locus=self.singular_locus,
            points=self.points,
            normalization=self.normalization,
            f_p=self.f_p,
            genus0=self.genus0,
            local_factor_inv=factor_inv,
        )


def singular_locus_p2(curve: CurveSpec) -> FPoly:
    """gcd(hbar, hbar'^2 gbar + gbar'^2) over GF(2), monic."""
    hbar = reduce_mod(curve.h, 2)
    gbar = reduce_mod(curve.g, 2)
    hd = hbar.derivative()
    gd = gbar.derivative()
    return gcd_poly(hbar, hd * hd * gbar + gd * gd)


def check_semistable_p2(curve: CurveSpec) -> bool:
    hbar = reduce_mod(curve.h, 2)
    if hbar.is_zero:
        return False
    gbar = reduce_mod(curve.g, 2)
    g1 = gcd_many([hbar, hbar.derivative(), gbar.derivative()])
    return g1.degree == 0


def check_semistable_podd(curve: CurveSpec, p: int) -> bool:
    if p == 2:
        raise ValueError("use check_semistable_p2 for p = 2")
    fbar = reduce_mod(curve.f, p)
    d1 = fbar.derivative()
    d2 = d1.derivative()
    return gcd_many([fbar, d1, d2]).degree == 0


def bad_prime_candidates(curve: CurveSpec) -> list[int]:
    """Ordered bad primes: odd divisors of disc(f), plus 2 when the
    mod-2 singular locus is nonempty."""
    if curve.discriminant == 0:
        raise CurveError("zero discriminant")
    odd = [p for p in factorize(curve.discriminant) if p != 2]
    out = sorted(odd)
    if singular_locus_p2(curve).degree >= 1:
        out.insert(0, 2)
    return out


def analyze_p2(curve: CurveSpec, seed: int = 0) -> BadPrimeReport:
    """Local data at p = 2 (must be semistable with a nonempty locus)."""
    if not check_semistable_p2(curve):
        raise NotSemistableError(2, "gcd(hbar, hbar', gbar') != 1")
    F2 = PrimeField(2)
    hbar = reduce_mod(curve.h, 2)
    gbar = reduce_mod(curve.g, 2)
    locus = singular_locus_p2(curve)
    if locus.degree < 1:
        raise ValueError("p = 2 is a good prime for this curve")
    if not locus.is_separable():
        raise InternalConsistencyError("singular locus must be separable")
    s = sqrt_mod(gbar, locus)
    h_new, rem = hbar.divmod(locus)
    if not rem.is_zero:
        raise InternalConsistencyError("locus must divide hbar")
    numer = gbar + s * s + hbar * s
    g_new, rem = numer.divmod(locus * locus)
    if not rem.is_zero:
        raise InternalConsistencyError(
            "locus^2 must divide gbar + s^2 + hbar*s"
        )
    if gcd_poly(h_new, locus).degree != 0:
        raise InternalConsistencyError("h_new must be coprime to the locus")

    points = []
    for r_i, mult in factor(locus, seed=seed):
        if mult != 1:
            raise InternalConsistencyError("locus factor with multiplicity")
        d = r_i.degree
        resfield = (
            ExtField(2, d, modulus=tuple(r_i.coeffs)) if d > 1 else F2
        )
        root = resfield.gen if d > 1 else _linear_root(r_i)
        h_val = _value_in(h_new, resfield, root)
        g_val = _value_in(g_new, resfield, root)
        eps = 1 if quad_solutions(h_val, g_val, resfield) == 2 else -1
        points.append(SingularPoint(min_poly=r_i, degree=d, epsilon=eps))

    f_p = locus.degree
    return BadPrimeReport(
        p=2,
        singular_locus=locus,
        points=tuple(points),
        normalization=NormalizationEq(kind="char2", h_new=h_new, g_new=g_new),
        f_p=f_p,
        genus0=curve.genus - f_p,
    )


def analyze_podd(curve: CurveSpec, p: int, seed: int = 0) -> BadPrimeReport:
    """Local data at an odd bad semistable prime."""
    if p == 2:
        raise ValueError("use analyze_p2 for p = 2")
    if not check_semistable_podd(curve, p):
        raise NotSemistableError(p, "gcd(fbar, fbar', fbar'') != 1")
    fbar = reduce_mod(curve.f, p)
    unit = fbar.leading
    fm = fbar.monic()
    locus = gcd_poly(fm, fm.derivative())
    if locus.degree < 1:
        raise ValueError(f"p = {p} is a good prime for this curve")
    s_monic, rem = fm.divmod(locus * locus)
    if not rem.is_zero:
        raise InternalConsistencyError("fbar != unit * locus^2 * s")
    if not (locus.is_separable() and s_monic.is_separable()):
        raise InternalConsistencyError("locus and s must be separable")
    if gcd_poly(locus, s_monic).degree != 0:
        raise InternalConsistencyError("locus and s must be coprime")
    # the split test needs the leading unit: the square class of s(a)
    # depends on it
    s = s_monic.scale(unit)

    F_p = PrimeField(p)
    points = []
    for r_i, mult in factor(locus, seed=seed):
        if mult != 1:
            raise InternalConsistencyError("locus factor with multiplicity")
        d = r_i.degree
        resfield = (
            ExtField(p, d, modulus=tuple(r_i.coeffs)) if d > 1 else F_p
        )
        root = resfield.gen if d > 1 else _linear_root(r_i)
        s_val = _value_in(s, resfield, root)
        eps = 1 if is_square(s_val, resfield) else -1
        points.append(SingularPoint(min_poly=r_i, degree=d, epsilon=eps))

    f_p = locus.degree
    return BadPrimeReport(
        p=p,
        singular_locus=locus,
        points=tuple(points),
        normalization=NormalizationEq(kind="odd", s=s),
        f_p=f_p,
        genus0=curve.genus - f_p,
    )


def analyze_bad_prime(curve: CurveSpec, p: int, seed: int = 0) -> BadPrimeReport:
    return analyze_p2(curve, seed) if p == 2 else analyze_podd(curve, p, seed)


def _linear_root(r: FPoly):
    """Root of a monic linear polynomial over its own field."""
    return r.field.neg(r.coeffs[0])


def _value_in(poly: FPoly, resfield, point):
    if isinstance(resfield, PrimeField):
        return poly(point)
    return poly.evaluate_in(resfield, point)
