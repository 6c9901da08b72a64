"""Seeded randomized identity suites shared by the CLI and the test suite.

Corpora are Erdos-Renyi graphs (edge probability 1/2) with a random root, so
every run with the same seed checks the same instances.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .convolutions import (
    comb_trace_check,
    h_additivity_check,
    schwenk_comb_check,
    schwenk_star_check,
    star_cauchy_identity_check,
)
from .cumulants import MultiMomentOracle, moment_cumulant_check
from .graphs import Graph, RootedGraph, comb_product, star_product
from .models import (
    MixedWord,
    OperatorModel,
    eval_cyclic_boolean_word,
    eval_cyclic_monotone_word,
    model_tables,
)
from .transforms import spectral_data


def random_rooted_graph(rng: random.Random, max_vertices: int, min_vertices: int = 2) -> RootedGraph:
    n = rng.randint(min_vertices, max_vertices)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.5
    ]
    return RootedGraph(Graph(n, edges), rng.randrange(n))


def random_symmetric_int_matrix(rng: random.Random, dim: int, bound: int = 2) -> list[list[int]]:
    m = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = rng.randint(-bound, bound)
            m[i][j] = v
            m[j][i] = v
    return m


@dataclass
class SuiteResult:
    suite: str
    trials: int
    passed: int = 0
    failed: int = 0
    certificates: list[dict] = field(default_factory=list)


def _star_pair_trial(rng: random.Random, max_vertices: int, checks) -> dict:
    g1 = random_rooted_graph(rng, max_vertices)
    g2 = random_rooted_graph(rng, max_vertices)
    sd1, sd2 = spectral_data(g1), spectral_data(g2)
    product_sd = spectral_data(star_product(g1, g2))
    for check in checks:
        outcome = check(sd1, sd2, product_sd)
        if not outcome:
            return {"ok": False, "detail": outcome.detail, "identity": outcome.name}
    return {"ok": True, "detail": ""}


def _comb_pair_trial(rng: random.Random, max_vertices: int, checks) -> dict:
    # the comb product multiplies vertex counts, so keep factors small enough
    # for the exact characteristic polynomial of the product
    g1 = random_rooted_graph(rng, min(max_vertices, 5))
    g2 = random_rooted_graph(rng, min(max_vertices, 4))
    sd1, sd2 = spectral_data(g1), spectral_data(g2)
    product_sd = spectral_data(comb_product(g1, g2))
    for check in checks:
        outcome = check(sd1, sd2, product_sd)
        if not outcome:
            return {"ok": False, "detail": outcome.detail, "identity": outcome.name}
    return {"ok": True, "detail": ""}


def _moment_cumulant_trial(rng: random.Random, max_vertices: int) -> dict:
    dim = rng.randint(2, 3)
    mat = random_symmetric_int_matrix(rng, dim)
    from .models import matrix_power_moments

    phis, omegas = matrix_power_moments(mat, 8)
    oracle = MultiMomentOracle(phis, omegas)
    n = rng.randint(1, 5)
    outcome = moment_cumulant_check(oracle, n)
    if not outcome:
        return {
            "ok": False,
            "detail": f"{outcome.detail}: lhs={outcome.lhs} rhs={outcome.rhs}",
        }
    return {"ok": True, "detail": ""}


def _object_matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    out = m
    for _ in range(k - 1):
        out = out.dot(m)
    return out


def _random_alternating_indices(rng: random.Random, length: int, algebras: int) -> list[int]:
    out = [rng.randint(1, algebras)]
    while len(out) < length:
        nxt = rng.randint(1, algebras)
        if nxt != out[-1]:
            out.append(nxt)
    return out


def _mixed_words_trial(rng: random.Random, max_vertices: int) -> dict:
    algebras = 3
    dims = tuple(rng.randint(2, 3) for _ in range(algebras))
    model = OperatorModel(dims)
    mats = [
        np.array(random_symmetric_int_matrix(rng, d, 1), dtype=object) for d in dims
    ]
    length = rng.randint(1, 6)
    indices = _random_alternating_indices(rng, length, algebras)
    powers = [rng.randint(1, 3) for _ in indices]
    word = MixedWord(tuple(zip(indices, powers)))
    for kind, embed, evaluator in (
        ("boolean", model.boolean_embed, eval_cyclic_boolean_word),
        ("monotone", model.monotone_embed, eval_cyclic_monotone_word),
    ):
        phi_fn, omega_fn = model_tables(model, mats, kind, count=24)
        big = None
        for idx, power in word.letters:
            factor = embed(idx - 1, _object_matrix_power(mats[idx - 1], power))
            big = factor if big is None else big.dot(factor)
        model_trace = big.trace()
        model_vacuum = big[0, 0]
        got_omega = evaluator(word, phi_fn, omega_fn, "omega")
        got_phi = evaluator(word, phi_fn, omega_fn, "phi")
        if got_omega != model_trace:
            return {
                "ok": False,
                "detail": f"{kind} omega: rules={got_omega} model={model_trace} word={word.letters}",
            }
        if got_phi != model_vacuum:
            return {
                "ok": False,
                "detail": f"{kind} phi: rules={got_phi} model={model_vacuum} word={word.letters}",
            }
    return {"ok": True, "detail": ""}


SUITES: dict[str, Callable] = {
    "h-additivity": lambda rng, mv: _star_pair_trial(rng, mv, [h_additivity_check]),
    "schwenk-star": lambda rng, mv: _star_pair_trial(rng, mv, [schwenk_star_check]),
    "schwenk-comb": lambda rng, mv: _comb_pair_trial(rng, mv, [schwenk_comb_check]),
    "comb-trace": lambda rng, mv: _comb_pair_trial(rng, mv, [comb_trace_check]),
    "star-cauchy": lambda rng, mv: _star_pair_trial(rng, mv, [star_cauchy_identity_check]),
    "moment-cumulant": lambda rng, mv: _moment_cumulant_trial(rng, mv),
    "mixed-words": lambda rng, mv: _mixed_words_trial(rng, mv),
}


def run_suite(
    name: str,
    trials: int = 100,
    max_vertices: int = 8,
    seed: int = 0,
    threads: int = 1,
) -> SuiteResult:
    """Run one named identity suite over a seeded corpus.

    Trials get independent per-trial seeds, so results do not depend on the
    thread count; output order is by trial index.
    """
    trial_fn = SUITES[name]
    result = SuiteResult(suite=name, trials=trials)

    def one(index: int) -> dict:
        rng = random.Random(seed * 1_000_003 + index)
        cert = trial_fn(rng, max_vertices)
        cert["trial"] = index
        return cert

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            certs = list(pool.map(one, range(trials)))
    else:
        certs = [one(i) for i in range(trials)]
    for cert in certs:
        if cert["ok"]:
            result.passed += 1
        else:
            result.failed += 1
    result.certificates = certs
    return result
