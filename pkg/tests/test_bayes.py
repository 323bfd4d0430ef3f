import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multitree.bayes import (
    ClassificationRule,
    CountTable,
    beta_prior,
    compare_predictors,
    counts_from_text,
    counts_to_text,
    flatness,
    grid_points,
    likelihood,
    map_predict,
    posterior,
    transductive_predict,
    uniform_prior,
)
from multitree.errors import BadIndexError, LengthMismatchError, ZeroNormalizerError


counts_strategy = st.lists(
    st.tuples(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=12)).map(
        lambda nr: (max(nr), min(nr))
    ),
    min_size=1,
    max_size=4,
).map(lambda rows: CountTable(tuple(rows)))


class TestCountTable:
    def test_validation(self):
        with pytest.raises(ValueError):
            CountTable(((3, 4),))
        with pytest.raises(ValueError):
            CountTable(((3, -1),))

    def test_text_round_trip(self):
        table = CountTable(((5, 2), (0, 0), (9, 9)))
        assert counts_from_text(counts_to_text(table)) == table

    def test_comments_and_blanks_ignored(self):
        table = counts_from_text("| header\n5 2\n\n3 0\n")
        assert table.counts == ((5, 2), (3, 0))


class TestLikelihood:
    def test_single_type_closed_form(self):
        rule = ClassificationRule((0.3,))
        counts = CountTable(((5, 2),))
        assert likelihood(rule, counts) == pytest.approx(0.3**2 * 0.7**3, rel=1e-12)

    def test_factorizes_over_types(self):
        counts = CountTable(((4, 1), (6, 5)))
        joint = likelihood(ClassificationRule((0.2, 0.8)), counts)
        a = likelihood(ClassificationRule((0.2,)), CountTable(((4, 1),)))
        b = likelihood(ClassificationRule((0.8,)), CountTable(((6, 5),)))
        assert joint == pytest.approx(a * b, rel=1e-12)

    def test_boundary_values(self):
        counts = CountTable(((3, 1),))
        assert likelihood(ClassificationRule((0.0,)), counts) == 0.0
        assert likelihood(ClassificationRule((1.0,)), counts) == 0.0
        pure = CountTable(((3, 3),))
        assert likelihood(ClassificationRule((1.0,)), pure) == 1.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            likelihood(ClassificationRule((0.5,)), CountTable(((1, 0), (1, 1))))

    @given(counts_strategy, st.floats(min_value=0.01, max_value=0.99))
    @settings(max_examples=50)
    def test_in_unit_interval(self, counts, phi):
        rule = ClassificationRule((phi,) * len(counts))
        assert 0.0 <= likelihood(rule, counts) <= 1.0


class TestPosterior:
    def test_weights_normalized(self):
        post = posterior(uniform_prior, CountTable(((7, 3), (2, 0))), grid_size=101)
        for w in post.weights:
            assert sum(w) == pytest.approx(1.0, abs=1e-12)
            assert all(x >= 0.0 for x in w)

    def test_grid_midpoints(self):
        pts = grid_points(4)
        assert pts == (0.125, 0.375, 0.625, 0.875)

    def test_mode_tracks_sample_fraction(self):
        post = posterior(uniform_prior, CountTable(((10, 8),)), grid_size=1001)
        assert map_predict(post, 0) == pytest.approx(0.8, abs=2e-3)

    def test_transduction_matches_laplace_rule(self):
        # with a uniform prior the exact posterior mean is (r+1)/(n+2)
        for n, r in [(0, 0), (1, 0), (5, 2), (10, 10), (12, 6)]:
            post = posterior(uniform_prior, CountTable(((n, r),)), grid_size=1001)
            assert transductive_predict(post, 0) == pytest.approx(
                (r + 1) / (n + 2), abs=2e-3
            )

    def test_no_data_is_flat(self):
        post = posterior(uniform_prior, CountTable(((0, 0),)), grid_size=101)
        assert map_predict(post, 0) == 0.5
        assert transductive_predict(post, 0) == pytest.approx(0.5, abs=1e-9)

    def test_beta_prior_shifts_mean(self):
        counts = CountTable(((4, 2),))
        flat = posterior(uniform_prior, counts, grid_size=1001)
        tilted = posterior(beta_prior(5, 1), counts, grid_size=1001)
        assert transductive_predict(tilted, 0) > transductive_predict(flat, 0)

    def test_zero_normalizer(self):
        with pytest.raises(ZeroNormalizerError):
            posterior(lambda phi: 0.0, CountTable(((1, 0),)), grid_size=11)

    def test_bad_component_index(self):
        post = posterior(uniform_prior, CountTable(((1, 0),)), grid_size=11)
        with pytest.raises(BadIndexError):
            post.component(1)


class TestFlatness:
    def test_more_data_less_spread(self):
        small = posterior(uniform_prior, CountTable(((4, 2),)), grid_size=501)
        big = posterior(uniform_prior, CountTable(((40, 20),)), grid_size=501)
        assert (
            flatness(big, 0)["posterior_sd"] < flatness(small, 0)["posterior_sd"]
        )
        assert flatness(big, 0)["hdr_mass"] > flatness(small, 0)["hdr_mass"]

    def test_hdr_mass_bounded(self):
        post = posterior(uniform_prior, CountTable(((6, 1),)), grid_size=201)
        mass = flatness(post, 0)["hdr_mass"]
        assert 0.0 < mass <= 1.0


class TestComparePredictors:
    COUNTS = CountTable(((6, 5), (6, 1), (4, 2)))
    TRUE = ClassificationRule((0.9, 0.1, 0.5))

    def test_deterministic_under_seed(self):
        a = compare_predictors(self.COUNTS, self.TRUE, trials=500, seed=7)
        b = compare_predictors(self.COUNTS, self.TRUE, trials=500, seed=7)
        assert a == b

    def test_seed_changes_draws(self):
        a = compare_predictors(self.COUNTS, self.TRUE, trials=500, seed=7)
        assert any(
            compare_predictors(self.COUNTS, self.TRUE, trials=500, seed=s) != a
            for s in range(3)
        )

    def test_error_rates_in_range(self):
        out = compare_predictors(self.COUNTS, self.TRUE, trials=300, seed=1)
        assert set(out) == {"map", "transduction", "averaged"}
        assert all(0.0 <= v <= 1.0 for v in out.values())

    def test_sparse_data_transduction_at_least_matches_map(self):
        # one observation per type: the mode sits at an extreme while the
        # mean stays moderate, so transduction should not lose
        counts = CountTable(((1, 1), (1, 0), (1, 1), (1, 0)))
        true = ClassificationRule((0.7, 0.3, 0.6, 0.4))
        out = compare_predictors(counts, true, trials=4000, seed=3)
        assert out["transduction"] <= out["map"] + 0.02

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            compare_predictors(self.COUNTS, ClassificationRule((0.5,)), 10, 0)

    def test_bad_trials(self):
        with pytest.raises(ValueError):
            compare_predictors(self.COUNTS, self.TRUE, trials=0, seed=0)
