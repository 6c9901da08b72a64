"""Ground-truth machinery: dense eigensolver, tensor operator models, and
rule-based evaluators for mixed moments under the two independences.

Everything here is deliberately independent of the transform pipeline so that
the two sides can arbitrate each other in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .transforms import SpectrumReport

JACOBI_TOL = 1e-12
CLUSTER_TOL = 1e-8
MAX_POWER = 64

MomentFn = Callable[[int, int], Fraction]


# ----------------------------------------------------------------------
# dense symmetric eigensolver (cyclic Jacobi)

def _check_symmetric(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    return a.copy()


def jacobi_eigenvalues(m: np.ndarray, tol: float = JACOBI_TOL) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm drops below tol * ||M||_F.
    """
    a = _check_symmetric(m)
    n = a.shape[0]
    if n <= 1:
        return np.diag(a).copy()
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(n)
    for _ in range(60):  # sweeps; far more than Jacobi ever needs
        off = math.sqrt(max((a * a).sum() - (np.diag(a) ** 2).sum(), 0.0))
        if off <= tol * norm:
            break
        threshold = off / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold * 1e-6:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(np.diag(a))


def eigensolve(m: np.ndarray) -> SpectrumReport:
    """SpectrumReport from the Jacobi solver, clustering near-equal values."""
    values = jacobi_eigenvalues(m)
    n = len(values)
    entries = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[j + 1] - values[j] <= CLUSTER_TOL:
            j += 1
        cluster = values[i : j + 1]
        entries.append((float(cluster.mean()), j - i + 1))
        i = j + 1
    return SpectrumReport(tuple(entries), n)


# ----------------------------------------------------------------------
# tensor operator models

def _rank_one_projector(dim: int) -> np.ndarray:
    p = np.zeros((dim, dim), dtype=object)
    p[0, 0] = 1
    return p


def _as_object_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not (m == m.T).all():
        raise ValueError("matrix must be symmetric")
    return m


@dataclass(frozen=True)
class OperatorModel:
    """Tensor-product model over factors with distinguished coordinate 0.

    boolean_embed places the operator at slot i with rank-one projectors on
    every other slot; monotone_embed keeps identities below slot i and
    projectors above it.
    """

    dims: tuple[int, ...]

    @property
    def total_dim(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    def _chain(self, factors: Sequence[np.ndarray]) -> np.ndarray:
        out = factors[0]
        for f in factors[1:]:
            out = np.kron(out, f)
        return out

    def boolean_embed(self, i: int, a) -> np.ndarray:
        a = _as_object_matrix(a)
        if a.shape[0] != self.dims[i]:
            raise ValueError(f"operator dim {a.shape[0]} != slot dim {self.dims[i]}")
        factors = [
            a if j == i else _rank_one_projector(d) for j, d in enumerate(self.dims)
        ]
        return self._chain(factors)

    def monotone_embed(self, i: int, a) -> np.ndarray:
        a = _as_object_matrix(a)
        if a.shape[0] != self.dims[i]:
            raise ValueError(f"operator dim {a.shape[0]} != slot dim {self.dims[i]}")
        factors: list[np.ndarray] = []
        for j, d in enumerate(self.dims):
            if j < i:
                factors.append(np.identity(d, dtype=object))
            elif j == i:
                factors.append(a)
            else:
                factors.append(_rank_one_projector(d))
        return self._chain(factors)


def trace_moment(m: np.ndarray, k: int):
    """Tr(M^k) by repeated multiplication; exact on int/Fraction matrices."""
    if k < 1 or k > MAX_POWER:
        raise ValueError(f"power {k} out of range 1..{MAX_POWER}")
    p = m
    for _ in range(k - 1):
        p = p.dot(m)
    return p.trace()


def vacuum_moment(m: np.ndarray, k: int, index: int = 0):
    """<M^k e, e> by k matrix-vector products."""
    if k < 1 or k > MAX_POWER:
        raise ValueError(f"power {k} out of range 1..{MAX_POWER}")
    n = m.shape[0]
    v = np.zeros(n, dtype=m.dtype)
    v[index] = 1
    for _ in range(k):
        v = m.dot(v)
    return v[index]


def matrix_power_moments(a, count: int) -> tuple[list, list]:
    """(vacuum, trace) moment tables for powers 1..count of one matrix."""
    m = _as_object_matrix(a)
    phis, omegas = [], []
    p = m
    for _ in range(count):
        phis.append(p[0, 0])
        omegas.append(p.trace())
        p = p.dot(m)
    return phis, omegas


# ----------------------------------------------------------------------
# abstract mixed words

@dataclass(frozen=True)
class MixedWord:
    """Alternating word: letters (algebra index, power), adjacent indices distinct."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for (i, p), (j, _) in zip(self.letters, self.letters[1:]):
            if i == j:
                raise ValueError("adjacent letters must use distinct algebras")
        if any(p < 1 for _, p in self.letters):
            raise ValueError("powers must be positive")

    def __len__(self) -> int:
        return len(self.letters)


def _merge_runs(letters: list[list[int]]) -> list[list[int]]:
    out: list[list[int]] = []
    for idx, power in letters:
        if out and out[-1][0] == idx:
            out[-1][1] += power
        else:
            out.append([idx, power])
    return out


def eval_cyclic_boolean_word(
    word: MixedWord, phi: MomentFn, omega: MomentFn, functional: str = "omega"
):
    """Mixed moment of an alternating word under full factorization rules.

    phi-words factor into single-letter state moments; omega-words of length
    one use the trace table, and otherwise factor after cyclically merging
    matching end letters.
    """
    letters = [list(l) for l in word.letters]
    if functional == "phi":
        prod = Fraction(1)
        for idx, power in letters:
            prod *= phi(idx, power)
        return prod
    if functional != "omega":
        raise ValueError("functional must be 'phi' or 'omega'")
    if len(letters) == 1:
        idx, power = letters[0]
        return omega(idx, power)
    if letters[0][0] == letters[-1][0]:
        last = letters.pop()
        letters[0][1] += last[1]
    if len(letters) == 1:
        idx, power = letters[0]
        return omega(idx, power)
    prod = Fraction(1)
    for idx, power in letters:
        prod *= phi(idx, power)
    return prod


def eval_cyclic_monotone_word(
    word: MixedWord, phi: MomentFn, omega: MomentFn, functional: str = "omega"
):
    """Mixed moment of a word over an ordered family, by local-maximum peeling.

    Each step removes one letter whose index is a strict local maximum
    (boundary conventions: minus infinity for phi-words, wrap-around for
    omega-words) and multiplies in its state moment; the last letter left is
    read from the state table (phi) or the trace table (omega).
    """
    letters = [list(l) for l in word.letters]
    if functional == "phi":
        prod = Fraction(1)
        while len(letters) > 1:
            p = _linear_local_max(letters)
            idx, power = letters.pop(p)
            prod *= phi(idx, power)
            letters = _merge_runs(letters)
        return prod * phi(letters[0][0], letters[0][1])
    if functional != "omega":
        raise ValueError("functional must be 'phi' or 'omega'")
    prod = Fraction(1)
    while True:
        letters = _merge_cyclic(letters)
        if len(letters) == 1:
            break
        p = _cyclic_local_max(letters)
        idx, power = letters.pop(p)
        prod *= phi(idx, power)
    return prod * omega(letters[0][0], letters[0][1])


def _linear_local_max(letters: list[list[int]]) -> int:
    n = len(letters)
    for p in range(n):
        left = letters[p - 1][0] if p > 0 else None
        right = letters[p + 1][0] if p < n - 1 else None
        v = letters[p][0]
        if (left is None or left < v) and (right is None or right < v):
            return p
    raise AssertionError("no local maximum in alternating word")


def _cyclic_local_max(letters: list[list[int]]) -> int:
    n = len(letters)
    for p in range(n):
        v = letters[p][0]
        if letters[(p - 1) % n][0] < v and letters[(p + 1) % n][0] < v:
            return p
    raise AssertionError("no cyclic local maximum")


def _merge_cyclic(letters: list[list[int]]) -> list[list[int]]:
    letters = _merge_runs(letters)
    while len(letters) > 1 and letters[0][0] == letters[-1][0]:
        last = letters.pop()
        letters[0][1] += last[1]
    return letters


def model_tables(
    model: OperatorModel, mats: Sequence, kind: str, count: int = MAX_POWER
) -> tuple[MomentFn, MomentFn]:
    """(phi, omega) moment functions matching the embedded operators.

    For the ordered embedding the trace picks up one full factor dimension
    per slot below the operator, so the omega table for slot i carries
    prod(dims[:i-1]); vector-state moments never do.
    """
    if kind not in ("boolean", "monotone"):
        raise ValueError("kind must be 'boolean' or 'monotone'")
    phis = []
    omegas = []
    below = 1
    for i, a in enumerate(mats):
        phi_t, omega_t = matrix_power_moments(a, count)
        if kind == "monotone":
            omega_t = [below * w for w in omega_t]
            below *= model.dims[i]
        phis.append(phi_t)
        omegas.append(omega_t)
    return multi_table_moments(phis), multi_table_moments(omegas)


def table_moments(table: Sequence) -> MomentFn:
    """Moment function for a single algebra: table[k-1] is the power-k moment."""

    def fn(index: int, power: int) -> Fraction:
        if power > len(table):
            raise ValueError(f"moment table too short for power {power}")
        return Fraction(table[power - 1])

    return fn


def multi_table_moments(tables: Sequence[Sequence]) -> MomentFn:
    """Moment function for several algebras: tables[i][k-1] for algebra i+1."""

    def fn(index: int, power: int) -> Fraction:
        table = tables[index - 1]
        if power > len(table):
            raise ValueError(f"moment table too short for power {power}")
        return Fraction(table[power - 1])

    return fn
