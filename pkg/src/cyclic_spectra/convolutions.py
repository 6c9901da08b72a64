"""Convolution identities for star and comb products.

All identities are stated and checked at the level of exact rational functions
or integer polynomials; the checkers return structured certificates so a
failing identity pinpoints the mismatching object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .exact import Polynomial, RationalFunction, TruncatedSeries
from .transforms import (
    RootedSpectralData,
    f_transform,
    green,
    h_transform,
    laurent_at_infinity,
    renormalized_cauchy,
)

_Z = RationalFunction.x()
_ONE_OVER_Z = RationalFunction(Polynomial.one(), Polynomial.x())


class TransformPair(NamedTuple):
    """The (renormalized trace resolvent, Green function) pair of one element."""

    rc: RationalFunction
    green: RationalFunction


def transform_pair(sd: RootedSpectralData) -> TransformPair:
    return TransformPair(renormalized_cauchy(sd), green(sd))


# ----------------------------------------------------------------------
# star product / additive convolution

def boolean_f_sum(f1: RationalFunction, f2: RationalFunction) -> RationalFunction:
    """F1 + F2 - z: the reciprocal Green function of an independent sum."""
    return f1 + f2 - _Z


def cyclic_boolean_sum(a: TransformPair, b: TransformPair) -> TransformPair:
    """Transforms of a + b for cyclic-Boolean independent a, b."""
    g_sum = boolean_f_sum(a.green.reciprocal(), b.green.reciprocal()).reciprocal()
    rc_sum = (
        a.rc
        + b.rc
        + a.green.log_derivative()
        + b.green.log_derivative()
        - g_sum.log_derivative()
        + _ONE_OVER_Z
    )
    return TransformPair(rc_sum, g_sum)


def nfold_star_transforms(sd: RootedSpectralData, n: int) -> TransformPair:
    """Transforms of the n-fold star power, in closed form (no iteration)."""
    if n < 1:
        raise ValueError("fold count must be >= 1")
    g = green(sd)
    rc = renormalized_cauchy(sd)
    f_n = n * g.reciprocal() - (n - 1) * _Z
    g_n = f_n.reciprocal()
    rc_n = (
        n * rc
        + n * g.log_derivative()
        - g_n.log_derivative()
        + (n - 1) * _ONE_OVER_Z
    )
    return TransformPair(rc_n, g_n)


def star_char_poly(
    sd1: RootedSpectralData, sd2: RootedSpectralData
) -> RootedSpectralData:
    """Characteristic polynomial pair of the star product, from the factors."""
    phi = (
        sd1.phi * sd2.phi_minus_root
        + sd1.phi_minus_root * sd2.phi
        - Polynomial.x() * sd1.phi_minus_root * sd2.phi_minus_root
    )
    phi_minus = sd1.phi_minus_root * sd2.phi_minus_root
    return RootedSpectralData(phi, phi_minus, sd1.dim + sd2.dim - 1)


# ----------------------------------------------------------------------
# comb product / ordered convolution

def monotone_f_compose(
    f1: RationalFunction, f2: RationalFunction
) -> RationalFunction:
    """F1 o F2: the reciprocal Green function of the comb product."""
    return f1.compose(f2)


def comb_char_poly(
    sd_g: RootedSpectralData, sd_h: RootedSpectralData
) -> RootedSpectralData:
    """Characteristic polynomial pair of the comb product g |> h.

    phi is phi_{h-root}^d * phi_g(F_h), assembled directly as a polynomial;
    the root-deleted polynomial follows the splitting recursion, which trades
    phi_g for phi_{g-root} and appends one more root-deleted copy of h.
    """
    phi = _poly_at_f(sd_g.phi, sd_h)
    phi_minus = _poly_at_f(sd_g.phi_minus_root, sd_h) * sd_h.phi_minus_root
    return RootedSpectralData(phi, phi_minus, sd_g.dim * sd_h.dim)


def _poly_at_f(p: Polynomial, sd_h: RootedSpectralData) -> Polynomial:
    """phi_{h-root}^deg(p) * p(phi_h / phi_{h-root}), expanded exactly."""
    if p.is_zero():
        return Polynomial.zero()
    d = p.degree
    acc = Polynomial.constant(p.coeffs[d])
    for k in range(d - 1, -1, -1):
        acc = acc * sd_h.phi + Polynomial.constant(p.coeffs[k]) * (
            sd_h.phi_minus_root ** (d - k)
        )
    return acc


def cyclic_monotone_sum(
    inner_rc: RationalFunction, outer: TransformPair
) -> RationalFunction:
    """Renormalized trace resolvent of a + b for cyclic-monotone (a, b).

    The lower element contributes through composition with the reciprocal
    Green function of the upper one: rc_b + F_b' * rc_a(F_b).
    """
    f_b = outer.green.reciprocal()
    return outer.rc + f_b.derivative() * inner_rc.compose(f_b)


def comb_trace_transform(
    sd_g: RootedSpectralData, sd_h: RootedSpectralData
) -> RationalFunction:
    """Renormalized trace resolvent of g |> h from the factor transforms.

    The trace side of the comb identity: d copies of the attached graph plus
    the composed contribution of the base graph, d = |g|.
    """
    rc_h = renormalized_cauchy(sd_h)
    f_h = f_transform(sd_h)
    rc_g = renormalized_cauchy(sd_g)
    return sd_g.dim * rc_h + f_h.derivative() * rc_g.compose(f_h)


def nfold_comb_transforms(sd: RootedSpectralData, n: int) -> TransformPair:
    """Transforms of the n-fold comb power (left fold)."""
    if n < 1:
        raise ValueError("fold count must be >= 1")
    rc = renormalized_cauchy(sd)
    f = f_transform(sd)
    rc_cur, f_cur, dim_cur = rc, f, sd.dim
    for _ in range(n - 1):
        rc_cur = dim_cur * rc + f.derivative() * rc_cur.compose(f)
        f_cur = f_cur.compose(f)
        dim_cur *= sd.dim
    return TransformPair(rc_cur, f_cur.reciprocal())


def k_transform(rc: RationalFunction, order: int) -> TruncatedSeries:
    """Antiderivative-style series -sum w_n / (n z^n), as a series in 1/z.

    Coefficient n of the result is -w_n/n for 1 <= n <= order, where w_n is
    the n-th trace moment carried by rc.
    """
    series = laurent_at_infinity(rc, order + 1)
    coeffs = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        coeffs[n] = -series.coefficient(n + 1) / n
    return TruncatedSeries(coeffs, order + 1)


def k_transform_sum(
    k_a: TruncatedSeries, k_b: TruncatedSeries, f_b: RationalFunction
) -> TruncatedSeries:
    """K_b + K_a o F_b, with the composition done on 1/z-series."""
    inner = laurent_at_infinity(f_b.reciprocal(), min(k_a.order, k_b.order) - 1)
    return k_b + k_a.compose(inner)


# ----------------------------------------------------------------------
# identity checkers with certificates

@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of one exact identity check; falsy when the sides differ."""

    name: str
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"identity": self.name, "ok": self.ok, "detail": self.detail}


def _compare(name: str, lhs, rhs) -> IdentityCheck:
    if lhs == rhs:
        return IdentityCheck(name, True)
    return IdentityCheck(name, False, detail=f"lhs={lhs} rhs={rhs}")


def star_cauchy_identity_check(
    sd1: RootedSpectralData,
    sd2: RootedSpectralData,
    product_sd: RootedSpectralData | None = None,
) -> IdentityCheck:
    """Trace-resolvent identity for the star product, checked exactly.

    The log-derivative corrected trace resolvent of the product must equal
    the sum of the corrected factor resolvents.
    """
    from .transforms import cauchy  # local import to keep module surface tidy

    if product_sd is None:
        product_sd = star_char_poly(sd1, sd2)
    lhs = cauchy(product_sd) + green(product_sd).log_derivative()
    rhs = (
        cauchy(sd1)
        + cauchy(sd2)
        + green(sd1).log_derivative()
        + green(sd2).log_derivative()
    )
    return _compare("star-cauchy", lhs, rhs)


def h_additivity_check(
    sd1: RootedSpectralData,
    sd2: RootedSpectralData,
    product_sd: RootedSpectralData,
) -> IdentityCheck:
    lhs = h_transform(product_sd)
    rhs = h_transform(sd1) + h_transform(sd2)
    return _compare("h-additivity", lhs, rhs)


def schwenk_star_check(
    sd1: RootedSpectralData,
    sd2: RootedSpectralData,
    product_sd: RootedSpectralData,
) -> IdentityCheck:
    predicted = star_char_poly(sd1, sd2)
    if predicted.phi != product_sd.phi:
        return IdentityCheck(
            "schwenk-star", False,
            detail=f"phi mismatch: {predicted.phi} vs {product_sd.phi}",
        )
    return _compare("schwenk-star", predicted.phi_minus_root, product_sd.phi_minus_root)


def schwenk_comb_check(
    sd_g: RootedSpectralData,
    sd_h: RootedSpectralData,
    product_sd: RootedSpectralData,
) -> IdentityCheck:
    predicted = comb_char_poly(sd_g, sd_h)
    if predicted.phi != product_sd.phi:
        return IdentityCheck(
            "schwenk-comb", False,
            detail=f"phi mismatch: {predicted.phi} vs {product_sd.phi}",
        )
    return _compare("schwenk-comb", predicted.phi_minus_root, product_sd.phi_minus_root)


def comb_trace_check(
    sd_g: RootedSpectralData,
    sd_h: RootedSpectralData,
    product_sd: RootedSpectralData,
) -> IdentityCheck:
    lhs = renormalized_cauchy(product_sd)
    rhs = comb_trace_transform(sd_g, sd_h)
    return _compare("comb-trace", lhs, rhs)
