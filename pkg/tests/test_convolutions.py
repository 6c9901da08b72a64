"""Convolution identities against the exact graph oracle."""

import random
from fractions import Fraction

from cyclic_spectra.convolutions import (
    boolean_f_sum,
    comb_char_poly,
    comb_trace_check,
    comb_trace_transform,
    cyclic_boolean_sum,
    cyclic_monotone_sum,
    h_additivity_check,
    k_transform,
    k_transform_sum,
    monotone_f_compose,
    nfold_comb_transforms,
    nfold_star_transforms,
    schwenk_comb_check,
    schwenk_star_check,
    star_cauchy_identity_check,
    star_char_poly,
    transform_pair,
)
from cyclic_spectra.exact import Polynomial, RationalFunction
from cyclic_spectra.graphs import (
    Graph,
    RootedGraph,
    comb_product,
    complete,
    friendship,
    nfold_comb,
    star_product,
)
from cyclic_spectra.transforms import (
    RootedSpectralData,
    f_transform,
    green,
    laurent_at_infinity,
    renormalized_cauchy,
    spectral_data,
)
from cyclic_spectra.verify import random_rooted_graph

F = Fraction


def poly(*coeffs):
    return Polynomial(coeffs)


def sd_k2():
    return spectral_data(complete(2))


def sd_vertex():
    return spectral_data(RootedGraph(Graph(1), 0))


class TestBooleanFSum:
    def test_two_edges(self):
        f = f_transform(sd_k2())
        # z - 2/z = (z^2 - 2)/z
        assert boolean_f_sum(f, f) == RationalFunction(poly(-2, 0, 1), poly(0, 1))

    def test_neutral_element(self):
        f = f_transform(sd_k2())
        assert boolean_f_sum(f, f_transform(sd_vertex())) == f

    def test_nfold_closed_form(self):
        f = f_transform(sd_k2())
        for n in range(1, 17):
            iterated = f
            for _ in range(n - 1):
                iterated = boolean_f_sum(iterated, f)
            closed = RationalFunction(poly(-n, 0, 1), poly(0, 1))  # z - n/z
            assert iterated == closed
            assert nfold_star_transforms(sd_k2(), n).green == closed.reciprocal()


class TestCyclicBooleanSum:
    def test_k2_pair_gives_star2(self):
        pair = transform_pair(sd_k2())
        total = cyclic_boolean_sum(pair, pair)
        # 4 / (z (z^2 - 2))
        assert total.rc == RationalFunction(poly(4), poly(0, -2, 0, 1))

    def test_neutral(self):
        pair = transform_pair(sd_k2())
        trivial = transform_pair(sd_vertex())
        total = cyclic_boolean_sum(pair, trivial)
        assert total.rc == pair.rc
        assert total.green == pair.green

    def test_friendship_from_k3(self):
        for n in (1, 2, 3, 7):
            total = nfold_star_transforms(spectral_data(complete(3)), n)
            direct = spectral_data(friendship(n))
            assert total.rc == renormalized_cauchy(direct)
            assert total.green == green(direct)

    def test_left_fold_matches_closed_form(self):
        for base in (complete(2), complete(3)):
            sd = spectral_data(base)
            pair = transform_pair(sd)
            acc = pair
            for n in range(2, 9):
                acc = cyclic_boolean_sum(acc, pair)
                closed = nfold_star_transforms(sd, n)
                assert acc.rc == closed.rc
                assert acc.green == closed.green

    def test_matches_star_product_on_corpus(self):
        rng = random.Random(42)
        for _ in range(60):
            g1 = random_rooted_graph(rng, 8)
            g2 = random_rooted_graph(rng, 8)
            total = cyclic_boolean_sum(
                transform_pair(spectral_data(g1)), transform_pair(spectral_data(g2))
            )
            product_sd = spectral_data(star_product(g1, g2))
            assert total.rc == renormalized_cauchy(product_sd)
            assert total.green == green(product_sd)


class TestStarCharPoly:
    def test_k2_pair(self):
        out = star_char_poly(sd_k2(), sd_k2())
        assert out.phi == poly(0, -2, 0, 1)
        assert out.phi_minus_root == poly(0, 0, 1)

    def test_neutral(self):
        out = star_char_poly(sd_k2(), sd_vertex())
        assert out.phi == sd_k2().phi

    def test_friendship_2(self):
        sd3 = spectral_data(complete(3))
        out = star_char_poly(sd3, sd3)
        expected = poly(-1, 1) * poly(1, 1) ** 2 * poly(-4, -1, 1)
        assert out.phi == expected
        assert out.phi == spectral_data(friendship(2)).phi


class TestMonotoneCompose:
    def test_p4(self):
        f = f_transform(sd_k2())
        composed = monotone_f_compose(f, f)
        p4 = comb_product(complete(2), complete(2))
        assert composed == f_transform(spectral_data(p4))

    def test_identity(self):
        f = f_transform(sd_k2())
        assert monotone_f_compose(f, RationalFunction.x()) == f

    def test_associativity(self):
        f = f_transform(sd_k2())
        lhs = monotone_f_compose(monotone_f_compose(f, f), f)
        rhs = monotone_f_compose(f, monotone_f_compose(f, f))
        assert lhs == rhs


class TestCombCharPoly:
    def test_p4(self):
        out = comb_char_poly(sd_k2(), sd_k2())
        assert out.phi == poly(1, 0, -3, 0, 1)
        assert out.dim == 4

    def test_neutral(self):
        out = comb_char_poly(sd_k2(), sd_vertex())
        assert out.phi == sd_k2().phi
        assert out.phi_minus_root == sd_k2().phi_minus_root

    def test_threefold(self):
        sd = sd_k2()
        predicted = comb_char_poly(sd_k2(), comb_char_poly(sd_k2(), sd_k2()))
        oracle = spectral_data(nfold_comb(complete(2), 3))
        assert predicted.phi == oracle.phi
        assert predicted.phi_minus_root == oracle.phi_minus_root

    def test_matches_oracle_on_corpus(self):
        rng = random.Random(43)
        for _ in range(40):
            g1 = random_rooted_graph(rng, 5)
            g2 = random_rooted_graph(rng, 4)
            predicted = comb_char_poly(spectral_data(g1), spectral_data(g2))
            oracle = spectral_data(comb_product(g1, g2))
            assert predicted.phi == oracle.phi
            assert predicted.phi_minus_root == oracle.phi_minus_root


class TestCyclicMonotoneSum:
    def test_comb_trace_identity_p4(self):
        sd = sd_k2()
        p4_sd = spectral_data(comb_product(complete(2), complete(2)))
        assert comb_trace_transform(sd, sd) == renormalized_cauchy(p4_sd)

    def test_inner_zero(self):
        outer = transform_pair(sd_k2())
        assert cyclic_monotone_sum(RationalFunction.zero(), outer) == outer.rc

    def test_outer_trivial(self):
        inner = renormalized_cauchy(sd_k2())
        outer = transform_pair(sd_vertex())
        total = cyclic_monotone_sum(inner, outer)
        assert total == inner

    def test_printed_first_term_is_a_misprint(self):
        # The first term of the trace identity must weight the attached
        # factor, not the base one; with distinct factors the wrong reading
        # fails while the corrected form matches the oracle exactly.
        sd_g = spectral_data(complete(3))
        sd_h = sd_k2()
        product = spectral_data(comb_product(complete(3), complete(2)))
        f_h = f_transform(sd_h)
        rc_g = renormalized_cauchy(sd_g)
        wrong = sd_g.dim * rc_g + f_h.derivative() * rc_g.compose(f_h)
        assert wrong != renormalized_cauchy(product)
        assert comb_trace_transform(sd_g, sd_h) == renormalized_cauchy(product)

    def test_matches_oracle_on_corpus(self):
        rng = random.Random(44)
        for _ in range(40):
            g1 = random_rooted_graph(rng, 5)
            g2 = random_rooted_graph(rng, 4)
            lhs = comb_trace_transform(spectral_data(g1), spectral_data(g2))
            rhs = renormalized_cauchy(spectral_data(comb_product(g1, g2)))
            assert lhs == rhs


class TestKTransform:
    def test_k2_series(self):
        k = k_transform(renormalized_cauchy(sd_k2()), 8)
        for n in range(1, 9):
            expected = F(-2, n) if n % 2 == 0 else F(0)
            assert k.coefficient(n) == expected

    def test_zero_inner(self):
        kb = k_transform(renormalized_cauchy(sd_k2()), 8)
        zero = k_transform(RationalFunction.zero(), 8)
        out = k_transform_sum(zero, kb, f_transform(sd_k2()))
        assert out == kb

    def test_matches_cyclic_monotone_sum(self):
        rng = random.Random(45)
        for _ in range(15):
            g1 = random_rooted_graph(rng, 5)
            g2 = random_rooted_graph(rng, 4)
            sd1, sd2 = spectral_data(g1), spectral_data(g2)
            order = 10
            k_a = k_transform(renormalized_cauchy(sd1), order)
            k_b = k_transform(renormalized_cauchy(sd2), order)
            summed = k_transform_sum(k_a, k_b, f_transform(sd2))
            direct_rc = cyclic_monotone_sum(
                renormalized_cauchy(sd1), transform_pair(sd2)
            )
            direct_k = k_transform(direct_rc, order)
            assert summed.truncate(order) == direct_k.truncate(order)

    def test_derivative_recovers_moment_series(self):
        rc = renormalized_cauchy(sd_k2())
        k = k_transform(rc, 8)
        mhat = -k.derivative_times_z()
        series = laurent_at_infinity(rc, 9)
        for n in range(1, 9):
            assert mhat.coefficient(n) == series.coefficient(n + 1)


class TestIdentityCheckers:
    def test_star_cauchy_true(self):
        assert star_cauchy_identity_check(sd_k2(), sd_k2())
        assert star_cauchy_identity_check(spectral_data(complete(3)), sd_k2())

    def test_star_cauchy_corrupted(self):
        # perturbing one root-deleted polynomial while keeping the true
        # product data must be caught, with a structured certificate
        good = sd_k2()
        bad = RootedSpectralData(good.phi, poly(1, 1), good.dim)
        product_sd = spectral_data(star_product(complete(2), complete(2)))
        outcome = star_cauchy_identity_check(good, bad, product_sd)
        assert not outcome
        assert outcome.detail
        assert outcome.to_json()["identity"] == "star-cauchy"

    def test_h_additivity_on_corpus(self):
        rng = random.Random(46)
        for _ in range(100):
            g1 = random_rooted_graph(rng, 8)
            g2 = random_rooted_graph(rng, 8)
            sd1, sd2 = spectral_data(g1), spectral_data(g2)
            product_sd = spectral_data(star_product(g1, g2))
            assert h_additivity_check(sd1, sd2, product_sd)
            assert schwenk_star_check(sd1, sd2, product_sd)
            assert star_cauchy_identity_check(sd1, sd2, product_sd)

    def test_comb_checks_on_corpus(self):
        rng = random.Random(47)
        for _ in range(30):
            g1 = random_rooted_graph(rng, 5)
            g2 = random_rooted_graph(rng, 4)
            sd1, sd2 = spectral_data(g1), spectral_data(g2)
            product_sd = spectral_data(comb_product(g1, g2))
            assert schwenk_comb_check(sd1, sd2, product_sd)
            assert comb_trace_check(sd1, sd2, product_sd)


class TestNfoldComb:
    def test_transforms_match_oracle(self):
        for n in (1, 2, 3):
            pair = nfold_comb_transforms(sd_k2(), n)
            oracle = spectral_data(nfold_comb(complete(2), n))
            assert pair.rc == renormalized_cauchy(oracle)
            assert pair.green == green(oracle)
