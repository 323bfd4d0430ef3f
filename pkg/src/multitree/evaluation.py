"""Test-set scoring (percentage error, Half-Brier) and sweep harness.

The sweep reproduces the error-versus-number-of-trees experiment design:
for each requested ensemble size it enumerates combinations of trees,
optionally restricted to the most structurally different ones, and
reports the mean test error across combinations.
"""

from __future__ import annotations

import io
import csv
import itertools
from dataclasses import dataclass

from .dataset import Dataset
from .ensemble import (
    CLASS_PROBABILITY,
    VOTING,
    Ensemble,
    combine_probabilities,
    signature,
    vote,
)
from .errors import (
    BadCountsError,
    EmptyTestSetError,
    NotAProbabilityVectorError,
    SchemaMismatchError,
)
from .induction import Tree, class_probabilities, classify


@dataclass(frozen=True)
class EvalReport:
    model_id: str
    percent_error: float
    half_brier: float
    n: int


@dataclass(frozen=True)
class SweepRow:
    tree_count: int
    mean_percent_error: float
    combination_count: int
    method: str


def percentage_error(predict, test: Dataset) -> float:
    """100 x (misclassified / test size) for a label-valued predictor."""
    if len(test) == 0:
        raise EmptyTestSetError("empty test set")
    wrong = sum(1 for inst in test if predict(inst) != inst.label)
    return 100.0 * wrong / len(test)


def half_brier(predict_proba, test: Dataset) -> float:
    """Half the mean squared difference between the predicted probability
    vector and the one-hot true label."""
    if len(test) == 0:
        raise EmptyTestSetError("empty test set")
    labels = test.schema.class_labels
    half_sse = 0.0
    for inst in test:
        vec = predict_proba(inst)
        if abs(sum(vec) - 1.0) > 1e-9:
            raise NotAProbabilityVectorError(f"vector sums to {sum(vec)!r}")
        truth = labels.index(inst.label)
        half_sse += sum(
            (p - (1.0 if i == truth else 0.0)) ** 2 for i, p in enumerate(vec)
        ) / 2.0
    # routed through the same 100*x/n arithmetic as percentage_error so the
    # 0/1-prediction identity half_brier == percentage_error/100 is bit-exact
    return (100.0 * half_sse / len(test)) / 100.0


def _predictors(model):
    if isinstance(model, Tree):
        return (lambda i: classify(model, i)), (lambda i: class_probabilities(model, i))
    if isinstance(model, Ensemble):
        return (lambda i: vote(model, i)), (lambda i: combine_probabilities(model, i))
    raise TypeError(f"cannot evaluate {type(model).__name__}")


def evaluate(model, test: Dataset, model_id: str = "") -> EvalReport:
    """Score a tree or ensemble on a test set with both metrics."""
    if len(test) == 0:
        raise EmptyTestSetError("empty test set")
    schema = model.schema
    if schema.class_labels != test.schema.class_labels or len(
        schema.attributes
    ) != len(test.schema.attributes):
        raise SchemaMismatchError("model and test set schemas disagree")
    predict, predict_proba = _predictors(model)
    return EvalReport(
        model_id=model_id,
        percent_error=percentage_error(predict, test),
        half_brier=half_brier(predict_proba, test),
        n=len(test),
    )


def _subset_diversity_key(sigs):
    roots = {s.root_test for s in sigs}
    level2 = {s.level2_tests for s in sigs}
    return (len(roots), len(level2))


def select_combinations(trees, k: int, prefer_different: bool):
    """k-combinations of tree indices; with prefer_different, only the
    subsets tied for the most distinct roots (then distinct level-2 sets)."""
    combos = list(itertools.combinations(range(len(trees)), k))
    if not prefer_different or k == 1:
        return combos
    sigs = [signature(t) for t in trees]
    keyed = [(_subset_diversity_key([sigs[i] for i in c]), c) for c in combos]
    best = max(key for key, _ in keyed)
    return [c for key, c in keyed if key == best]


def combination_errors(trees, test: Dataset, combos, method: str = VOTING):
    """Percent error for many tree combinations over one test set.

    Computes each tree's per-instance estimate once, so evaluating all
    k-subsets stays affordable.  The vote arithmetic (summation order and
    tie rule) matches ``ensemble.vote`` bit for bit.
    """
    if len(test) == 0:
        raise EmptyTestSetError("empty test set")
    from .ensemble import tree_estimate

    labels = test.schema.class_labels
    cached = [
        [tree_estimate(method, t, inst) for inst in test] for t in trees
    ]
    majorities = [t.root.dist.majority_index() for t in trees]
    out = []
    for combo in combos:
        wrong = 0
        majority = majorities[combo[0]]
        for j, inst in enumerate(test.instances):
            acc = [0.0] * len(labels)
            for i in combo:
                est = cached[i][j]
                for c in range(len(labels)):
                    acc[c] += 1.0 * est[c]
            best = max(acc)
            tied = [c for c, v in enumerate(acc) if v == best]
            pick = majority if len(tied) > 1 and majority in tied else tied[0]
            if labels[pick] != inst.label:
                wrong += 1
        out.append(100.0 * wrong / len(test))
    return out


def sweep(
    trees: list[Tree],
    test: Dataset,
    counts: list[int],
    prefer_different: bool = False,
    method: str = VOTING,
    allow_even_ties: bool = False,
) -> list[SweepRow]:
    """Mean combination error for each requested ensemble size.

    Even sizes with categorical (unpruned) voting are rejected unless
    ``allow_even_ties`` opts in to the deterministic tie rule.
    """
    if not counts or any(not 1 <= k <= len(trees) for k in counts):
        raise BadCountsError(f"counts must lie in [1, {len(trees)}]")
    has_unpruned = any(t.pruning is None for t in trees)
    rows = []
    for k in counts:
        if (
            method == VOTING
            and has_unpruned
            and k % 2 == 0
            and not allow_even_ties
        ):
            raise BadCountsError(
                f"even tree count {k} with categorical voting; "
                "pass allow_even_ties to use the tie-break rule"
            )
        combos = select_combinations(trees, k, prefer_different)
        errors = combination_errors(trees, test, combos, method)
        rows.append(SweepRow(k, sum(errors) / len(errors), len(combos), method))
    return rows


def curve_export(rows) -> str:
    """CSV of (k, score) pairs; accepts SweepRows or bare (k, score) tuples."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "score"])
    for row in rows:
        if isinstance(row, SweepRow):
            writer.writerow([row.tree_count, repr(row.mean_percent_error)])
        else:
            k, score = row
            writer.writerow([k, repr(float(score))])
    return out.getvalue()


def curve_import(text: str) -> list[tuple[int, float]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != ["k", "score"]:
        raise ValueError(f"unexpected curve header {header!r}")
    return [(int(k), float(score)) for k, score in reader]
