"""Limit theorems and the infinite-divisibility classifier.

Covers the central-limit behavior of iterated star powers (spectral gap), the
trace-moment limits of iterated comb powers via ordered set partitions, the
integer moment table of the two-point comb limit with its two independent
recursions, and the classification of additively divisible trace spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .convolutions import TransformPair, cyclic_boolean_sum, nfold_star_transforms
from .exact import Polynomial, RationalFunction
from .partitions import OrderedSetPartition, maximal_arcs
from .transforms import (
    RootedSpectralData,
    SpectrumReport,
    extract_spectrum,
    laurent_at_infinity,
    renormalized_cauchy,
)

BETA_CAP = 200


# ----------------------------------------------------------------------
# central limit behavior of star powers

def cb_clt_limits(k: int, alpha=None):
    """Limiting (state, trace) moments of order k for normalized sums.

    The trace limit of the variance is the summand's own trace variance,
    reported as the string 'alpha' unless a value is supplied.
    """
    if k < 1:
        raise ValueError("moment order must be >= 1")
    phi_limit = 1 if k % 2 == 0 else 0
    if k % 2 == 1:
        omega_limit = Fraction(0)
    elif k == 2:
        omega_limit = "alpha" if alpha is None else alpha
    else:
        omega_limit = Fraction(2)
    return phi_limit, omega_limit


@dataclass(frozen=True)
class CLTLimitReport:
    """Limit of one normalized-sum moment with its finite-size trajectory."""

    k: int
    phi_limit: int
    omega_limit: object  # Fraction, or 'alpha' when k = 2 and none supplied
    finite_n_values: tuple[tuple[int, float], ...]


def clt_report(
    sd: RootedSpectralData, root_degree: int, k: int, n_values: Sequence[int]
) -> CLTLimitReport:
    """Finite-size trace moments of normalized star-power sums against their limit.

    Moments come from the exact convolution pipeline, so the sample sizes can
    reach the hundreds; only the final normalization is floating point.
    """
    alpha = None
    if k == 2:
        rc = renormalized_cauchy(sd)
        alpha = laurent_at_infinity(rc, 3).coefficient(3) / root_degree
    phi_limit, omega_limit = cb_clt_limits(k, alpha=alpha)
    rows = []
    for n in n_values:
        pair = nfold_star_transforms(sd, n)
        moment = laurent_at_infinity(pair.rc, k + 1).coefficient(k + 1)
        rows.append((n, float(moment) / (root_degree * n) ** (k / 2)))
    return CLTLimitReport(k, phi_limit, omega_limit, tuple(rows))


@dataclass(frozen=True)
class GapRow:
    n: int
    largest: float
    smallest: float
    largest_mult: int
    smallest_mult: int
    bulk_max: float


def spectral_gap_report(
    sd: RootedSpectralData, root_degree: int, n_max: int
) -> list[GapRow]:
    """Spectra of n-fold star powers rescaled by 1/sqrt(deg * n), per n.

    Spectra come from the exact convolution pipeline; only the final square
    root is floating point.
    """
    if root_degree < 1:
        raise ValueError("root must have positive degree")
    rows = []
    for n in range(1, n_max + 1):
        pair = nfold_star_transforms(sd, n)
        dim = n * (sd.dim - 1) + 1
        report = extract_spectrum(pair.rc, dim)
        scale = 1.0 / math.sqrt(root_degree * n)
        scaled = [(v * scale, m) for v, m in report.entries]
        largest, l_mult = scaled[-1]
        smallest, s_mult = scaled[0]
        bulk = [abs(v) for v, _ in scaled[1:-1]]
        rows.append(
            GapRow(n, largest, smallest, l_mult, s_mult, max(bulk, default=0.0))
        )
    return rows


# ----------------------------------------------------------------------
# comb power moments via ordered set partitions

@lru_cache(maxsize=None)
def alpha_k(d: int, n: int, k: int) -> int:
    """Sum of d^(j_1 - 1) over increasing k-tuples from {1..n}; 0 when n < k.

    Recursion peels the largest index; the base k = 1 is the geometric sum.
    """
    if d < 2:
        raise ValueError("factor dimension must be >= 2")
    if k < 0 or n < 0:
        raise ValueError("negative arguments")
    if k == 0:
        return 1
    if n < k:
        return 0
    if k == 1:
        return (d**n - 1) // (d - 1)
    return sum(alpha_k(d, j - 1, k - 1) for j in range(k, n + 1))


def omega_of_ordered_partition(
    pi: OrderedSetPartition, psi_moments: Sequence, tr_moments: Sequence
) -> Fraction:
    """Trace moment attached to an ordered set partition.

    Peels the last block into maximal circular arcs, each contributing a
    state moment of its length, and recurses on the remaining circle; a lone
    block reads the trace table.
    """
    psi = [Fraction(x) for x in psi_moments]
    tr = [Fraction(x) for x in tr_moments]

    def rec(blocks: tuple[tuple[int, ...], ...], ground: tuple[int, ...]) -> Fraction:
        if len(blocks) == 1:
            return tr[len(ground) - 1]
        positions = {x: i + 1 for i, x in enumerate(ground)}
        last = blocks[-1]
        value = Fraction(1)
        for arc in maximal_arcs([positions[x] for x in last], len(ground)):
            value *= psi[len(arc) - 1]
        rest = tuple(x for x in ground if x not in set(last))
        return value * rec(blocks[:-1], rest)

    return rec(pi.blocks, tuple(range(1, pi.n + 1)))


def _line_run_weights(length: int, psi: Sequence[Fraction]) -> list[list[Fraction]]:
    """lw[L][m]: weighted count of 0/1 lines of length L with m ones, where
    each maximal run of ones of length j carries weight psi[j-1]."""
    lw = [[Fraction(0)] * (length + 1) for _ in range(length + 1)]
    lw[0][0] = Fraction(1)
    for ln in range(1, length + 1):
        for m in range(0, ln + 1):
            total = lw[ln - 1][m]  # last position empty
            for j in range(1, m + 1):  # run of length j at the right end
                if j == ln:
                    if m == j:
                        total += psi[j - 1]
                else:
                    total += psi[j - 1] * lw[ln - j - 1][m - j]
            lw[ln][m] = total
    return lw


def _circle_block_weights(s: int, psi: Sequence[Fraction]) -> list[Fraction]:
    """w[m]: total arc weight of proper nonempty subsets of the s-cycle with m
    elements, each subset weighted by the product of psi over its maximal arcs."""
    lw = _line_run_weights(s, psi)
    w = [Fraction(0)] * s
    for m in range(1, s):
        total = lw[s - 1][m]  # subsets avoiding a fixed base point
        for j in range(1, min(m, s - 1) + 1):
            rest = s - j - 2
            if rest >= 0:
                total += j * psi[j - 1] * lw[rest][m - j]
            elif m == j:  # arc covers all but one point
                total += j * psi[j - 1]
        w[m] = total
    return w


def ordered_partition_moment_sums(
    k: int, psi_moments: Sequence, tr_moments: Sequence
) -> list[Fraction]:
    """v[p] = sum of the partition moments over ordered set partitions of [k]
    with exactly p blocks, computed by a circular-run recursion (no
    enumeration, so k may exceed enumeration caps)."""
    psi = [Fraction(x) for x in psi_moments]
    tr = [Fraction(x) for x in tr_moments]
    if len(psi) < k or len(tr) < k:
        raise ValueError("moment tables too short")
    weights = {s: _circle_block_weights(s, psi) for s in range(1, k + 1)}
    v = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]  # v[s][p]
    for s in range(1, k + 1):
        v[s][1] = tr[s - 1]
        for p in range(2, s + 1):
            total = Fraction(0)
            for m in range(1, s):
                if v[s - m][p - 1]:
                    total += weights[s][m] * v[s - m][p - 1]
            v[s][p] = total
    return v[k]


def finite_n_comb_moment(
    d: int, n: int, k: int, psi_moments: Sequence, tr_moments: Sequence
) -> Fraction:
    """Exact trace moment of order k of the n-fold ordered iid sum."""
    v = ordered_partition_moment_sums(k, psi_moments, tr_moments)
    return sum(
        (alpha_k(d, n, p) * v[p] for p in range(1, k + 1)), start=Fraction(0)
    )


def comb_limit_moment(
    d: int, k: int, psi_moments: Sequence, tr_moments: Sequence
) -> Fraction:
    """Limit of d^-n times the finite-n moments."""
    v = ordered_partition_moment_sums(k, psi_moments, tr_moments)
    return sum(
        (v[p] / Fraction(d - 1) ** p for p in range(1, k + 1)), start=Fraction(0)
    )


# ----------------------------------------------------------------------
# two-point comb limit moments (exact integer tables)

@dataclass(frozen=True)
class BetaTable:
    """Even limit moments beta_0..beta_n with the block-count refinement gamma."""

    values: tuple[int, ...]
    gamma: tuple[tuple[int, ...], ...]  # gamma[n][k], 1 <= k <= n

    def __post_init__(self):
        if self.values[0] != 1:
            raise ValueError("beta_0 must be 1")


def _beta_coefficient(n: int, el: int) -> int:
    """The integer weight binom(n+el, n-el) * 2n / (n+el)."""
    num = math.comb(n + el, n - el) * 2 * n
    if num % (n + el):
        raise AssertionError("non-integer recursion coefficient")
    return num // (n + el)


def beta_table(n_max: int) -> BetaTable:
    """Moment table by two independent recursions, which must agree.

    The direct route convolves earlier values; the refined route counts
    weighted subsets of the cycle per block count and resums over the block
    counts.  Disagreement raises, so a returned table is self-consistent.
    """
    if not 0 <= n_max <= BETA_CAP:
        raise ValueError(f"n_max out of range 0..{BETA_CAP}")
    beta = [1]
    for n in range(1, n_max + 1):
        beta.append(sum(_beta_coefficient(n, el) * beta[el] for el in range(n)))
    gamma: list[tuple[int, ...]] = [()]
    table: dict[tuple[int, int], int] = {}
    for n in range(1, n_max + 1):
        row = [0] * (n + 1)
        row[1] = 2
        table[(n, 1)] = 2
        for k in range(2, n + 1):
            val = sum(
                _beta_coefficient(n, el) * table[(el, k - 1)]
                for el in range(k - 1, n)
            )
            row[k] = val
            table[(n, k)] = val
        gamma.append(tuple(row[1:]))
        if sum(row) != beta[n]:
            raise AssertionError(
                f"recursion routes disagree at n={n}: {sum(row)} vs {beta[n]}"
            )
    return BetaTable(tuple(beta), tuple(gamma))


def carleman_check(n_max: int) -> tuple[bool, list[float]]:
    """Verify beta_n <= (11 n)^(2n) exactly; also return the divergent
    partial sums of beta_n^(-1/2n)."""
    table = beta_table(n_max)
    partial = []
    acc = 0.0
    for n in range(1, n_max + 1):
        if table.values[n] > (11 * n) ** (2 * n):
            return False, partial
        acc += table.values[n] ** (-1.0 / (2 * n))
        partial.append(acc)
    return True, partial


# ----------------------------------------------------------------------
# infinite divisibility

@dataclass(frozen=True)
class IDVerdict:
    divisible: bool
    case: str  # zero | one_nonzero | two_nonzero | none
    alpha: float | None = None
    beta: float | None = None
    reason: str = ""


def cb_id_classify(
    spectrum: SpectrumReport, weights: Sequence, tol: float = 1e-9
) -> IDVerdict:
    """Classify a (trace spectrum, state weights) pair for divisibility.

    weights[i] is the state weight of spectrum.entries[i]; they must be
    nonnegative and sum to one.
    """
    if len(weights) != len(spectrum.entries):
        raise ValueError("one weight per spectrum entry required")
    wts = [float(w) for w in weights]
    if any(w < -tol for w in wts) or abs(sum(wts) - 1.0) > tol:
        raise ValueError("weights must be nonnegative and sum to 1")
    nonzero = [
        (v, m, w)
        for (v, m), w in zip(spectrum.entries, wts)
        if abs(v) > tol
    ]
    if not nonzero:
        return IDVerdict(True, "zero")
    if len(nonzero) == 1:
        v, m, w = nonzero[0]
        if m != 1:
            return IDVerdict(False, "none", reason="single eigenvalue not simple")
        if abs(w - 1.0) > tol:
            return IDVerdict(
                False, "none", reason="state not concentrated on the eigenvalue"
            )
        return IDVerdict(True, "one_nonzero", alpha=v)
    if len(nonzero) == 2:
        (a, ma, wa), (b, mb, wb) = nonzero
        if ma != 1 or mb != 1:
            return IDVerdict(False, "none", reason="eigenvalues not simple")
        if a * b >= 0:
            return IDVerdict(False, "none", reason="eigenvalues have equal signs")
        expected_a = -a / (b - a)
        expected_b = b / (b - a)
        if abs(wa - expected_a) > tol or abs(wb - expected_b) > tol:
            return IDVerdict(False, "none", reason="state weights off the line")
        return IDVerdict(True, "two_nonzero", alpha=a, beta=b)
    return IDVerdict(False, "none", reason="more than two non-zero eigenvalues")


@dataclass(frozen=True)
class NthRootData:
    """n-th convolution root of a two-point element.

    The root pair solves x^2 - s x + q with s, q the original sum and product
    scaled by 1/n; those exact values drive symbolic round trips while the
    individual roots and weights are reported numerically.
    """

    alpha: float
    beta: float
    weights: tuple[float, float]
    sum_exact: Fraction
    product_exact: Fraction

    def transforms(self) -> TransformPair:
        return two_point_transforms(self.sum_exact, self.product_exact)


def two_point_transforms(s: Fraction, q: Fraction) -> TransformPair:
    """Exact transform pair of a two-point element with eigenvalue sum s and
    product q (q < 0), state weights on the divisible line."""
    z = Polynomial.x()
    quad = Polynomial((q, -s, 1))
    rc = RationalFunction(Polynomial((-2 * q, s)), z * quad)
    g = RationalFunction(z, quad)
    return TransformPair(rc, g)


def cb_id_nth_root(alpha, beta, n: int) -> NthRootData:
    """The n-th additive root of a divisible two-point (alpha, beta) element."""
    a, b = Fraction(alpha), Fraction(beta)
    if a * b >= 0:
        raise ValueError("eigenvalues must have opposite signs")
    if n < 1:
        raise ValueError("n must be >= 1")
    s = (a + b) / n
    q = (a * b) / n
    disc = s * s - 4 * q
    root = math.sqrt(float(disc))
    lo = (float(s) - root) / 2.0
    hi = (float(s) + root) / 2.0
    weights = (-lo / (hi - lo), hi / (hi - lo))
    return NthRootData(lo, hi, weights, s, q)


def nth_root_round_trip(alpha, beta, n: int) -> bool:
    """Exact check: n-fold self-convolution of the root reproduces the element."""
    root = cb_id_nth_root(alpha, beta, n)
    pair = root.transforms()
    acc = pair
    for _ in range(n - 1):
        acc = cyclic_boolean_sum(acc, pair)
    expected = two_point_transforms(
        Fraction(alpha) + Fraction(beta), Fraction(alpha) * Fraction(beta)
    )
    return acc.rc == expected.rc and acc.green == expected.green
