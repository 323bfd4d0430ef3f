import itertools

import pytest

from multitree.dataset import Dataset, parse_dataset
from multitree.ensemble import VOTING, Ensemble, generate_alternates, signature
from multitree.errors import (
    BadCountsError,
    EmptyTestSetError,
    NotAProbabilityVectorError,
)
from multitree.evaluation import (
    combination_errors,
    curve_export,
    curve_import,
    evaluate,
    half_brier,
    percentage_error,
    select_combinations,
    sweep,
)
from multitree.induction import build_tree
from multitree.pruning import prune
from multitree.synthetic import BENCHMARK_ALTERNATES, benchmark_split


@pytest.fixture(scope="module")
def benchmark():
    train, test = benchmark_split(11)
    return train, test, generate_alternates(train, BENCHMARK_ALTERNATES)


class TestPercentageError:
    def test_all_correct(self, toy_data):
        assert percentage_error(lambda i: i.label, toy_data) == 0.0

    def test_all_wrong(self, toy_data):
        flip = {"pass": "fail", "fail": "pass"}
        assert percentage_error(lambda i: flip[i.label], toy_data) == 100.0

    def test_fraction(self, toy_schema):
        data = parse_dataset(
            "yes,patient,pass\nyes,patient,pass\nno,impatient,fail\nno,impatient,fail",
            toy_schema,
        )
        assert percentage_error(lambda i: "pass", data) == 50.0

    def test_empty(self, toy_schema):
        with pytest.raises(EmptyTestSetError):
            percentage_error(lambda i: "pass", Dataset(toy_schema, ()))


class TestHalfBrier:
    def test_perfect_confident(self, toy_data):
        labels = toy_data.schema.class_labels

        def proba(inst):
            vec = [0.0, 0.0]
            vec[labels.index(inst.label)] = 1.0
            return vec

        assert half_brier(proba, toy_data) == 0.0

    def test_uniform_guess_two_class(self, toy_data):
        assert half_brier(lambda i: [0.5, 0.5], toy_data) == pytest.approx(0.25)

    def test_one_hot_identity_is_exact(self, toy_schema):
        # a 0/1 probability predictor must reproduce percentage_error / 100
        # down to the last bit, including awkward counts like 1/3
        for n_wrong, n_total in [(1, 3), (2, 7), (5, 9), (0, 4), (3, 3)]:
            rows = ["yes,patient,pass"] * (n_total - n_wrong) + [
                "no,impatient,pass"
            ] * n_wrong
            data = parse_dataset("\n".join(rows), toy_schema)
            labels = data.schema.class_labels

            def predict(inst):
                return "pass" if inst.values[0] == "yes" else "fail"

            def proba(inst):
                vec = [0.0, 0.0]
                vec[labels.index(predict(inst))] = 1.0
                return vec

            assert half_brier(proba, data) == percentage_error(predict, data) / 100.0

    def test_rejects_non_probability_vector(self, toy_data):
        with pytest.raises(NotAProbabilityVectorError):
            half_brier(lambda i: [0.9, 0.4], toy_data)

    def test_empty(self, toy_schema):
        with pytest.raises(EmptyTestSetError):
            half_brier(lambda i: [1.0, 0.0], Dataset(toy_schema, ()))


class TestEvaluate:
    def test_tree_report(self, benchmark):
        train, test, _ = benchmark
        tree = build_tree(train)
        report = evaluate(tree, test, model_id="tree0")
        assert report.model_id == "tree0"
        assert report.n == len(test)
        assert 0.0 <= report.percent_error <= 100.0
        assert 0.0 <= report.half_brier <= 1.0

    def test_unpruned_tree_identity(self, benchmark):
        train, test, _ = benchmark
        report = evaluate(build_tree(train), test)
        # an unpruned tree predicts with confident leaves almost everywhere,
        # but mixed leaves (from missing-free noisy data they still occur
        # when a branch runs out of tests) can soften the score
        assert report.half_brier <= report.percent_error / 100.0 + 0.25

    def test_ensemble_report(self, benchmark):
        train, test, trees = benchmark
        report = evaluate(Ensemble(trees[:3], method=VOTING), test)
        assert report.n == len(test)
        assert 0.0 <= report.percent_error <= 100.0


class TestSelectCombinations:
    def test_plain_enumeration(self, benchmark):
        _, _, trees = benchmark
        combos = select_combinations(trees, 2, prefer_different=False)
        assert len(combos) == len(list(itertools.combinations(range(len(trees)), 2)))

    def test_prefer_different_maximizes_roots(self, benchmark):
        _, _, trees = benchmark
        sigs = [signature(t) for t in trees]
        combos = select_combinations(trees, 3, prefer_different=True)
        all_combos = list(itertools.combinations(range(len(trees)), 3))
        best = max(len({sigs[i].root_test for i in c}) for c in all_combos)
        for c in combos:
            assert len({sigs[i].root_test for i in c}) == best

    def test_k1_unfiltered(self, benchmark):
        _, _, trees = benchmark
        assert select_combinations(trees, 1, True) == [
            (i,) for i in range(len(trees))
        ]


class TestCombinationErrors:
    def test_matches_slow_path_exactly(self, benchmark):
        train, test, trees = benchmark
        combos = select_combinations(trees, 3, prefer_different=False)[:20]
        fast = combination_errors(trees, test, combos, VOTING)
        for err, combo in zip(fast, combos):
            e = Ensemble([trees[i] for i in combo], method=VOTING)
            slow = evaluate(e, test).percent_error
            assert err == slow

    def test_singletons_match_tree_eval(self, benchmark):
        _, test, trees = benchmark
        errs = combination_errors(trees, test, [(i,) for i in range(len(trees))])
        for i, err in enumerate(errs):
            assert err == evaluate(trees[i], test).percent_error

    def test_empty_test_set(self, benchmark, toy_schema):
        _, _, trees = benchmark
        with pytest.raises(EmptyTestSetError):
            combination_errors(trees, Dataset(trees[0].schema, ()), [(0,)])


class TestSweep:
    def test_rows_shape(self, benchmark):
        _, test, trees = benchmark
        rows = sweep(trees, test, [1, 3, 5])
        assert [r.tree_count for r in rows] == [1, 3, 5]
        assert all(r.combination_count > 0 for r in rows)
        assert all(0.0 <= r.mean_percent_error <= 100.0 for r in rows)

    def test_even_count_rejected_for_unpruned_voting(self, benchmark):
        _, test, trees = benchmark
        with pytest.raises(BadCountsError):
            sweep(trees, test, [2])
        rows = sweep(trees, test, [2], allow_even_ties=True)
        assert rows[0].tree_count == 2

    def test_even_count_fine_when_pruned(self, benchmark):
        _, test, trees = benchmark
        pruned = [prune(t) for t in trees[:4]]
        rows = sweep(pruned, test, [2])
        assert rows[0].combination_count == 6

    def test_out_of_range_counts(self, benchmark):
        _, test, trees = benchmark
        with pytest.raises(BadCountsError):
            sweep(trees, test, [0])
        with pytest.raises(BadCountsError):
            sweep(trees, test, [len(trees) + 1])

    def test_prefer_different_uses_fewer_combos(self, benchmark):
        _, test, trees = benchmark
        free = sweep(trees, test, [3], prefer_different=False)
        tight = sweep(trees, test, [3], prefer_different=True)
        assert tight[0].combination_count <= free[0].combination_count


class TestCurveSerialization:
    def test_round_trip(self, benchmark):
        _, test, trees = benchmark
        rows = sweep(trees, test, [1, 3])
        pairs = curve_import(curve_export(rows))
        assert pairs == [(r.tree_count, r.mean_percent_error) for r in rows]

    def test_bare_tuples(self):
        text = curve_export([(1, 30.0), (3, 25.5)])
        assert curve_import(text) == [(1, 30.0), (3, 25.5)]

    def test_bad_header(self):
        with pytest.raises(ValueError):
            curve_import("a,b\n1,2\n")
