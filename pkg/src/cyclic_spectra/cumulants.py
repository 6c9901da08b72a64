"""Cyclic-Boolean cumulants: generating-function transforms, partitioned
moments on the free-product word algebra, and Moebius-defined cumulants.

Multivariate cumulants are computed by the defining lattice sum; the
interval / rotation case split is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import TruncatedSeries
from .models import MixedWord, eval_cyclic_boolean_word, table_moments
from .partitions import (
    SetPartition,
    is_cyclic_interval,
    is_interval_partition,
    moebius,
    refinements,
    rotate_to_interval,
    top,
)

LATTICE_CAP = 8


@dataclass(frozen=True)
class MomentData:
    """State and trace moment sequences of one element; index k-1 is power k."""

    phi: tuple[Fraction, ...]
    omega: tuple[Fraction, ...]

    def __init__(self, phi: Sequence, omega: Sequence):
        object.__setattr__(self, "phi", tuple(Fraction(x) for x in phi))
        object.__setattr__(self, "omega", tuple(Fraction(x) for x in omega))
        if len(self.phi) != len(self.omega):
            raise ValueError("phi and omega tables must have equal length")
        if not self.phi:
            raise ValueError("need at least one moment")

    @property
    def order(self) -> int:
        return len(self.phi)


def _moment_series(values: Sequence[Fraction]) -> TruncatedSeries:
    return TruncatedSeries([Fraction(0), *values], len(values) + 1)


def moment_generating_series(m: MomentData) -> tuple[TruncatedSeries, TruncatedSeries]:
    """(state series M, trace series M-hat), both with zero constant term."""
    return _moment_series(m.phi), _moment_series(m.omega)


def boolean_cumulant_series(m: MomentData) -> TruncatedSeries:
    """B = M / (1 + M)."""
    series_m, _ = moment_generating_series(m)
    return series_m * series_m.reciprocal_of_one_plus()


def cyclic_cumulant_series(m: MomentData) -> TruncatedSeries:
    """C = M-hat - z M B', the linearizing trace-side transform."""
    series_m, series_mhat = moment_generating_series(m)
    b = boolean_cumulant_series(m)
    return series_mhat - series_m * b.derivative_times_z()


def boolean_cumulants(m: MomentData) -> list[Fraction]:
    """b_1..b_K."""
    b = boolean_cumulant_series(m)
    return [b.coefficient(n) for n in range(1, m.order + 1)]


def cyclic_boolean_cumulants(m: MomentData) -> list[Fraction]:
    """c_1..c_K; c_1 is the first trace moment, c_2 the trace variance."""
    c = cyclic_cumulant_series(m)
    return [c.coefficient(n) for n in range(1, m.order + 1)]


def h_coefficients(m: MomentData) -> list[Fraction]:
    """Expansion coefficients of the additive transform: h_n = c_n - n b_n."""
    bs = boolean_cumulants(m)
    cs = cyclic_boolean_cumulants(m)
    return [c - n * b for n, (b, c) in enumerate(zip(bs, cs), start=1)]


# ----------------------------------------------------------------------
# multivariate layer

class MultiMomentOracle:
    """Moment evaluator for words over independent copies of one element.

    Wraps the single-algebra tables phi(a^k), omega(a^k) and evaluates both
    product functionals on arbitrary index words via the factorization rules.
    """

    def __init__(self, phi_moments: Sequence, omega_moments: Sequence):
        self.phi_table = tuple(Fraction(x) for x in phi_moments)
        self.omega_table = tuple(Fraction(x) for x in omega_moments)
        self._phi = table_moments(self.phi_table)
        self._omega = table_moments(self.omega_table)

    @classmethod
    def from_moment_data(cls, m: MomentData) -> "MultiMomentOracle":
        return cls(m.phi, m.omega)

    def moment_data(self, order: int | None = None) -> MomentData:
        k = order or len(self.phi_table)
        return MomentData(self.phi_table[:k], self.omega_table[:k])

    def eval_word(self, indices: Sequence[int], powers: Sequence[int], functional: str):
        """Value of the product functional on a_1^(i_1) ... a_n^(i_n)."""
        merged: list[list[int]] = []
        for idx, power in zip(indices, powers):
            if merged and merged[-1][0] == idx:
                merged[-1][1] += power
            else:
                merged.append([idx, power])
        word = MixedWord(tuple((i, p) for i, p in merged))
        return eval_cyclic_boolean_word(word, self._phi, self._omega, functional)


def _index_word(pi: SetPartition) -> list[int]:
    label = {}
    for k, b in enumerate(pi.blocks, start=1):
        for x in b:
            label[x] = k
    return [label[x] for x in range(1, pi.n + 1)]


def partitioned_moment(
    oracle: MultiMomentOracle,
    pi: SetPartition,
    powers: Sequence[int] | None = None,
    functional: str = "omega",
) -> Fraction:
    """omega_pi (or phi_pi): the product functional on any word with kernel pi."""
    if powers is None:
        powers = [1] * pi.n
    if len(powers) != pi.n:
        raise ValueError("word length must match ground set")
    return oracle.eval_word(_index_word(pi), powers, functional)


def boolean_partition_cumulant(
    oracle: MultiMomentOracle, pi: SetPartition, powers: Sequence[int] | None = None
) -> Fraction:
    """B_pi by Moebius inversion of the state-side partitioned moments."""
    total = Fraction(0)
    for rho in refinements(pi):
        total += partitioned_moment(oracle, rho, powers, "phi") * moebius(rho, pi)
    return total


def partition_cumulant(
    oracle: MultiMomentOracle, pi: SetPartition, powers: Sequence[int] | None = None
) -> Fraction:
    """Partitioned cyclic-Boolean cumulant, by the defining lattice sum."""
    if pi.n > LATTICE_CAP:
        raise ValueError(f"ground set {pi.n} exceeds lattice cap {LATTICE_CAP}")
    total = Fraction(0)
    for rho in refinements(pi):
        total += partitioned_moment(oracle, rho, powers, "omega") * moebius(rho, pi)
    return total


def partition_cumulant_case_split(
    oracle: MultiMomentOracle, pi: SetPartition, powers: Sequence[int] | None = None
) -> Fraction:
    """Same cumulant through the interval / rotation / recursion case split."""
    n = pi.n
    if powers is None:
        powers = [1] * n
    if not is_cyclic_interval(pi):
        return Fraction(0)
    if pi == top(n):
        total = partitioned_moment(oracle, pi, powers, "omega")
        for rho in (
            p
            for p in refinements(top(n))
            if p != top(n) and is_cyclic_interval(p)
        ):
            total -= partition_cumulant_case_split(oracle, rho, powers)
        return total
    if is_interval_partition(pi):
        return boolean_partition_cumulant(oracle, pi, powers)
    r, rotated = rotate_to_interval(pi)
    rotated_powers = [powers[(j - 1 + r) % n] for j in range(1, n + 1)]
    return boolean_partition_cumulant(oracle, rotated, rotated_powers)


@dataclass(frozen=True)
class MomentCumulantCheck:
    ok: bool
    lhs: Fraction
    rhs: Fraction
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def moment_cumulant_check(
    oracle: MultiMomentOracle,
    n: int,
    powers: Sequence[int] | None = None,
    reference_omega: Sequence | None = None,
) -> MomentCumulantCheck:
    """Check that cyclic-interval cumulants resum to the trace moment.

    Also verifies the single-variable recursion splitting the moment into the
    top cumulant plus Boolean contributions of the proper cyclic intervals.
    The moment being reproduced is read from reference_omega when given, so an
    oracle with a perturbed trace table fails against the true reference.
    """
    if n > LATTICE_CAP:
        raise ValueError(f"n={n} exceeds lattice cap {LATTICE_CAP}")
    if powers is None:
        powers = [1] * n
    total_power = sum(powers)
    if reference_omega is not None:
        lhs = Fraction(reference_omega[total_power - 1])
    else:
        lhs = Fraction(oracle.omega_table[total_power - 1])
    rhs = Fraction(0)
    for pi in refinements(top(n)):
        if is_cyclic_interval(pi):
            rhs += partition_cumulant(oracle, pi, powers)
    if lhs != rhs:
        return MomentCumulantCheck(False, lhs, rhs, "lattice resummation differs")
    if all(p == 1 for p in powers):
        cs = cyclic_boolean_cumulants(oracle.moment_data(n))
        bs = boolean_cumulants(oracle.moment_data(n))
        recursion = cs[n - 1]
        for pi in refinements(top(n)):
            if pi != top(n) and is_cyclic_interval(pi):
                term = Fraction(1)
                for b in pi.blocks:
                    term *= bs[len(b) - 1]
                recursion += term
        if recursion != lhs:
            return MomentCumulantCheck(
                False, lhs, recursion, "univariate recursion differs"
            )
    return MomentCumulantCheck(True, lhs, rhs)
