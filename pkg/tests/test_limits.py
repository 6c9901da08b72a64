"""Limit theorems, comb-power moments, moment tables, divisibility classifier."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cyclic_spectra.convolutions import nfold_star_transforms
from cyclic_spectra.graphs import complete
from cyclic_spectra.limits import (
    alpha_k,
    beta_table,
    carleman_check,
    cb_clt_limits,
    cb_id_classify,
    cb_id_nth_root,
    comb_limit_moment,
    finite_n_comb_moment,
    nth_root_round_trip,
    omega_of_ordered_partition,
    ordered_partition_moment_sums,
    spectral_gap_report,
)
from cyclic_spectra.models import OperatorModel, matrix_power_moments, trace_moment
from cyclic_spectra.partitions import OrderedSetPartition, enumerate_partitions
from cyclic_spectra.transforms import SpectrumReport, laurent_at_infinity, spectral_data
from cyclic_spectra.verify import random_rooted_graph

F = Fraction

K2_PSI = [F(0) if k % 2 else F(1) for k in range(1, 21)]
K2_TR = [2 * x for x in K2_PSI]


class TestCltLimits:
    def test_odd(self):
        assert cb_clt_limits(3) == (0, 0)
        assert cb_clt_limits(7) == (0, 0)

    def test_even_beyond_two(self):
        assert cb_clt_limits(4) == (1, 2)
        assert cb_clt_limits(10) == (1, 2)

    def test_variance_keeps_summand_trace(self):
        assert cb_clt_limits(2) == (1, "alpha")
        assert cb_clt_limits(2, alpha=F(3)) == (1, F(3))

    def test_finite_n_fourth_moment_rate(self):
        # K3 star powers: trace of the normalized fourth power approaches 2
        # at rate 5/(2N), well inside the 5/N envelope
        sd = spectral_data(complete(3))
        deg = 2
        for n in list(range(1, 21)) + [50, 100, 200, 400]:
            pair = nfold_star_transforms(sd, n)
            series = laurent_at_infinity(pair.rc, 5)
            w4 = series.coefficient(5)
            scaled = w4 / (deg * n) ** 2
            assert abs(scaled - 2) <= F(5, n)
            assert scaled - 2 == F(5, 2 * n)

    def test_pipeline_matches_closed_form_power_sums(self):
        # trace moments of friendship graphs: hub pair satisfies
        # p_k = p_{k-1} + 2N p_{k-2}, plus the +-1 bulk
        sd = spectral_data(complete(3))
        for n in (1, 2, 5, 17, 60):
            pair = nfold_star_transforms(sd, n)
            series = laurent_at_infinity(pair.rc, 9)
            p = [2, 1]  # power sums of the two hub eigenvalues
            for k in range(2, 9):
                p.append(p[-1] + 2 * n * p[-2])
            for k in range(1, 9):
                bulk = n * (-1) ** k + (n - 1)
                assert series.coefficient(k + 1) == p[k] + bulk


class TestCltReport:
    def test_trace_variance_constant(self):
        from cyclic_spectra.limits import clt_report

        report = clt_report(spectral_data(complete(3)), 2, 2, [1, 5, 25, 125])
        assert report.omega_limit == F(3)
        assert all(v == 3.0 for _, v in report.finite_n_values)

    def test_fourth_moment_converges(self):
        from cyclic_spectra.limits import clt_report

        report = clt_report(spectral_data(complete(3)), 2, 4, [2, 8, 32, 128])
        assert report.omega_limit == F(2)
        errors = [abs(v - 2) for _, v in report.finite_n_values]
        assert errors == sorted(errors, reverse=True)


class TestSpectralGap:
    def test_k2_exact(self):
        rows = spectral_gap_report(spectral_data(complete(2)), 1, 12)
        for row in rows:
            assert abs(row.largest - 1.0) < 1e-9
            assert abs(row.smallest + 1.0) < 1e-9
            assert row.largest_mult == 1 and row.smallest_mult == 1
            assert row.bulk_max < 1e-9

    def test_k3_rates(self):
        rows = spectral_gap_report(spectral_data(complete(3)), 2, 40)
        errors = []
        for row in rows:
            n = row.n
            assert abs(row.largest - (math.sqrt(1 + 1 / (8 * n)) + 1 / (2 * math.sqrt(2 * n)))) < 1e-9
            if n >= 2:  # at n = 1 the +1 branch is empty, so there is no bulk
                assert abs(row.bulk_max - 1 / math.sqrt(2 * n)) < 1e-9
            assert row.bulk_max <= 2 / math.sqrt(2 * n) + 1e-12
            errors.append(abs(row.largest - 1.0))
        assert errors == sorted(errors, reverse=True)

    def test_extremes_simple_and_converging(self):
        rng = random.Random(99)
        g = random_rooted_graph(rng, 4)
        while g.root_degree() == 0:
            g = random_rooted_graph(rng, 4)
        rows = spectral_gap_report(spectral_data(g), g.root_degree(), 256)
        errors = [abs(row.largest - 1.0) for row in rows[3:]]
        assert errors[-1] < errors[0]
        assert rows[-1].bulk_max < rows[3].bulk_max
        assert rows[-1].largest_mult == 1 and rows[-1].smallest_mult == 1
        assert abs(rows[-1].largest - 1.0) < 0.01


class TestAlpha:
    def test_geometric_base(self):
        for d in (2, 3, 5):
            for n in range(0, 8):
                assert alpha_k(d, n, 1) == sum(d ** (j - 1) for j in range(1, n + 1))

    def test_vanishes_below_diagonal(self):
        for d in (2, 3):
            for k in range(1, 6):
                for n in range(0, k):
                    assert alpha_k(d, n, k) == 0

    def test_brute_force(self):
        from itertools import combinations

        for d in (2, 3):
            for n in range(0, 7):
                for k in range(1, 5):
                    brute = sum(
                        d ** (tup[0] - 1)
                        for tup in combinations(range(1, n + 1), k)
                    )
                    assert alpha_k(d, n, k) == brute

    def test_normalized_limit(self):
        d, k = 2, 3
        value = alpha_k(d, 40, k) / Fraction(d) ** 40
        assert abs(float(value) - 1 / (d - 1) ** k) < 1e-9


class TestOmegaOfOrderedPartition:
    def test_single_block(self):
        pi = OrderedSetPartition(4, [(1, 2, 3, 4)])
        assert omega_of_ordered_partition(pi, K2_PSI, K2_TR) == 2

    def test_three_letter_example(self):
        pi = OrderedSetPartition(3, [(1, 3), (2,)])
        psi = [F(p + 3) for p in range(6)]
        tr = [F(10 * p + 7) for p in range(6)]
        # peel {2}: one arc of size 1, then the remaining pair is one circle
        assert omega_of_ordered_partition(pi, psi, tr) == psi[0] * tr[1]
        assert omega_of_ordered_partition(pi, K2_PSI, K2_TR) == 0

    def test_six_letter_example(self):
        pi = OrderedSetPartition(6, [(3,), (2, 4, 6), (1, 5)])
        psi = [F(p + 3) for p in range(8)]
        tr = [F(10 * p + 7) for p in range(8)]
        expected = psi[0] ** 2 * psi[2] * tr[0]
        assert omega_of_ordered_partition(pi, psi, tr) == expected

    def test_moment_sums_match_enumeration(self):
        rng = random.Random(3)
        for _ in range(6):
            psi = [F(rng.randint(-3, 3)) for _ in range(8)]
            tr = [F(rng.randint(-3, 3)) for _ in range(8)]
            for k in range(1, 7):
                sums = ordered_partition_moment_sums(k, psi, tr)
                brute = [F(0)] * (k + 1)
                for pi in enumerate_partitions(k, "OP"):
                    brute[len(pi)] += omega_of_ordered_partition(pi, psi, tr)
                assert sums[1:] == brute[1:]


class TestFiniteNMoments:
    def test_first_moment(self):
        psi = [F(p + 2) for p in range(8)]
        tr = [F(3 * p + 1) for p in range(8)]
        for d in (2, 3):
            for n in range(0, 7):
                assert finite_n_comb_moment(d, n, 1, psi, tr) == alpha_k(d, n, 1) * tr[0]

    def test_second_moment_closed_form(self):
        psi = [F(p + 2) for p in range(8)]
        tr = [F(3 * p + 1) for p in range(8)]
        for d in (2, 3, 4):
            for n in range(1, 8):
                nd = F(d**n - 1, d - 1)
                expected = F(2, d - 1) * (nd - n) * tr[0] * psi[0] + nd * tr[1]
                assert finite_n_comb_moment(d, n, 2, psi, tr) == expected

    def test_third_moment_closed_form(self):
        psi = [F(p + 2) for p in range(8)]
        tr = [F(3 * p + 1) for p in range(8)]
        for d in (2, 3):
            for n in range(1, 8):
                nd = F(d**n - 1, d - 1)
                x = F(1, d - 1)
                expected = (
                    6 * ((nd - n) * x * x - F(n * (n - 1), 2) * x) * tr[0] * psi[0] ** 2
                    + 3 * x * (nd - n) * (tr[1] * psi[0] + tr[0] * psi[1])
                    + nd * tr[2]
                )
                assert finite_n_comb_moment(d, n, 3, psi, tr) == expected

    def test_matches_tensor_model_d2(self):
        a = np.array([[0, 1], [1, 0]], dtype=object)
        for n in range(1, 9):
            model = OperatorModel((2,) * n)
            big = sum(model.monotone_embed(i, a) for i in range(n))
            for k in range(1, 7):
                assert finite_n_comb_moment(2, n, k, K2_PSI, K2_TR) == trace_moment(big, k)

    def test_matches_tensor_model_d3(self):
        rng = random.Random(8)
        mat = [[0, 1, 1], [1, 0, 0], [1, 0, 0]]
        a = np.array(mat, dtype=object)
        psi, tr = matrix_power_moments(a, 8)
        for n in range(1, 6):
            model = OperatorModel((3,) * n)
            big = sum(model.monotone_embed(i, a) for i in range(n))
            for k in range(1, 7):
                assert finite_n_comb_moment(3, n, k, psi, tr) == trace_moment(big, k)

    def test_scaled_convergence(self):
        for d in (2, 3):
            for k in range(1, 7):
                limit = comb_limit_moment(d, k, K2_PSI, K2_TR)
                if limit == 0:
                    continue
                n = 30
                scaled = finite_n_comb_moment(d, n, k, K2_PSI, K2_TR) / F(d) ** n
                assert abs(scaled - limit) <= abs(limit) * F(1, 100)


class TestBetaTable:
    def test_published_values(self):
        table = beta_table(7)
        assert table.values == (1, 2, 10, 80, 874, 12092, 202384, 3973580)

    def test_gamma_first_column(self):
        table = beta_table(10)
        for n in range(1, 11):
            assert table.gamma[n][0] == 2

    def test_routes_agree_to_50(self):
        table = beta_table(50)
        for n in range(1, 51):
            assert sum(table.gamma[n]) == table.values[n]

    def test_comb_limit_matches_beta(self):
        table = beta_table(7)
        for n in range(1, 8):
            assert comb_limit_moment(2, 2 * n, K2_PSI, K2_TR) == table.values[n]
        for k in (1, 3, 5, 7):
            assert comb_limit_moment(2, k, K2_PSI, K2_TR) == 0

    def test_gamma_matches_block_count_sums(self):
        table = beta_table(5)
        for n in range(1, 6):
            sums = ordered_partition_moment_sums(2 * n, K2_PSI, K2_TR)
            assert tuple(sums[1 : n + 1]) == table.gamma[n]
            assert all(v == 0 for v in sums[n + 1 :])

    def test_carleman(self):
        ok, partial = carleman_check(50)
        assert ok
        assert partial == sorted(partial)
        assert partial[-1] > partial[0]

    def test_bounds_small_cases(self):
        table = beta_table(7)
        assert table.values[1] == 2 <= 11**2
        assert table.values[7] == 3973580 <= 77**14


class TestIDClassifier:
    def test_k2_divisible(self):
        spectrum = SpectrumReport(((-1.0, 1), (1.0, 1)), 2)
        verdict = cb_id_classify(spectrum, [0.5, 0.5])
        assert verdict.divisible and verdict.case == "two_nonzero"

    def test_same_sign_rejected(self):
        spectrum = SpectrumReport(((2.0, 1), (3.0, 1)), 2)
        verdict = cb_id_classify(spectrum, [F(-2, 1) / (3 - 2) * 0 + F(1, 2), F(1, 2)])
        assert not verdict.divisible

    def test_zero_operator(self):
        spectrum = SpectrumReport(((0.0, 3),), 3)
        verdict = cb_id_classify(spectrum, [1.0])
        assert verdict.divisible and verdict.case == "zero"

    def test_one_nonzero(self):
        spectrum = SpectrumReport(((0.0, 2), (5.0, 1)), 3)
        assert cb_id_classify(spectrum, [0.0, 1.0]).divisible
        assert not cb_id_classify(spectrum, [0.5, 0.5]).divisible

    def test_wrong_weights_rejected(self):
        spectrum = SpectrumReport(((-1.0, 1), (2.0, 1)), 2)
        good = cb_id_classify(spectrum, [1 / 3, 2 / 3])
        bad = cb_id_classify(spectrum, [0.5, 0.5])
        assert good.divisible and not bad.divisible

    def test_multiplicity_rejected(self):
        spectrum = SpectrumReport(((-1.0, 2), (1.0, 1)), 3)
        verdict = cb_id_classify(spectrum, [2 / 3, 1 / 3])
        assert not verdict.divisible

    def test_weight_validation(self):
        spectrum = SpectrumReport(((-1.0, 1), (1.0, 1)), 2)
        with pytest.raises(ValueError):
            cb_id_classify(spectrum, [0.9, 0.9])


class TestNthRoot:
    def test_symmetric_pair(self):
        root = cb_id_nth_root(-1, 1, 2)
        assert abs(root.alpha + 1 / math.sqrt(2)) < 1e-12
        assert abs(root.beta - 1 / math.sqrt(2)) < 1e-12
        assert abs(root.weights[0] - 0.5) < 1e-12

    def test_identity_root(self):
        root = cb_id_nth_root(-1, 2, 1)
        assert root.alpha == -1 and root.beta == 2
        assert abs(root.weights[0] - F(1, 3)) < 1e-12
        assert abs(root.weights[1] - F(2, 3)) < 1e-12

    def test_same_sign_rejected(self):
        with pytest.raises(ValueError):
            cb_id_nth_root(1, 2, 3)

    def test_round_trips_exact(self):
        rng = random.Random(31)
        pairs = []
        while len(pairs) < 10:
            a = F(rng.randint(-8, -1), rng.randint(1, 4))
            b = F(rng.randint(1, 8), rng.randint(1, 4))
            pairs.append((a, b))
        for a, b in pairs:
            for n in range(1, 7):
                assert nth_root_round_trip(a, b, n)

    def test_root_transforms_expand_to_moments(self):
        # the exact transform pair carries the root's power sums, which obey
        # p_k = s p_{k-1} - q p_{k-2} for the eigenvalue sum s and product q
        root = cb_id_nth_root(F(-1), F(2), 3)
        pair = root.transforms()
        series = laurent_at_infinity(pair.rc, 7)
        p = [F(2), root.sum_exact]
        for _ in range(2, 7):
            p.append(root.sum_exact * p[-1] - root.product_exact * p[-2])
        for k in range(1, 7):
            assert series.coefficient(k + 1) == p[k]
