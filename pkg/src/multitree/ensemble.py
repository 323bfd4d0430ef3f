"""Families of alternate trees and prediction combination.

Alternate trees come from systematically overriding the chosen test at the
top levels of the tree: at any node within the override depth, every test
whose gain is within a ratio of the node maximum is a legal choice.  The
all-default tree (the plain maximum-gain tree) is always enumerated first.

Predictions are combined by weight-normalized averaging of per-tree class
estimates; the voting method returns the argmax class of that average.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .dataset import Dataset, Instance
from .errors import BadKError, EmptyTrainingSetError, SchemaMismatchError
from .induction import (
    ClassDistribution,
    DiscreteTest,
    ScriptedPolicy,
    Tree,
    build_tree,
    class_distribution,
    class_probabilities,
    classify,
    partition,
    rank_tests,
)

VOTING = "voting"
CLASS_PROBABILITY = "class-probability"


@dataclass(frozen=True)
class TreeSignature:
    root_test: tuple | None
    level2_tests: frozenset

    def shares_root(self, other: "TreeSignature") -> bool:
        return self.root_test is not None and self.root_test == other.root_test

    def shares_level2(self, other: "TreeSignature") -> bool:
        # second levels count as shared only when they use the same test
        # set; mere overlap is unavoidable on low-dimensional data and
        # would make every pair of trees "similar"
        return bool(self.level2_tests) and self.level2_tests == other.level2_tests


def signature(tree: Tree) -> TreeSignature:
    """Root-test identity plus the set of depth-2 test identities."""
    root = tree.root
    if root.is_leaf:
        return TreeSignature(None, frozenset())
    level2 = frozenset(
        c.test.identity() for c in root.children if not c.is_leaf
    )
    return TreeSignature(root.test.identity(), level2)


@dataclass(frozen=True)
class AlternatesConfig:
    override_depth: int = 2
    gain_ratio: float = 0.85
    per_node_cap: int = 3
    max_trees: int = 16

    def __post_init__(self):
        if self.override_depth < 1:
            raise ValueError("override_depth must be >= 1")
        if not 0 < self.gain_ratio <= 1:
            raise ValueError("gain_ratio must be in (0, 1]")
        if self.per_node_cap < 1 or self.max_trees < 1:
            raise ValueError("caps must be >= 1")


_SCRIPT_BUDGET = 10000  # hard cap on enumerated scripts before dedup


def _enumerate_scripts(data, used, path, depth, config):
    """Return (script, overrides) pairs for nodes within the override depth.

    A script maps node path -> test identity; ``overrides`` counts the
    selections that differ from the default (top-ranked) test.
    """
    dist = class_distribution(data)
    if max(dist.counts) == dist.total:
        return [({}, 0)]
    ranked = rank_tests(data, used=used)
    if not ranked or ranked[0][1] <= 1e-12:
        return [({}, 0)]
    if depth > config.override_depth:
        return [({}, 0)]
    max_gain = ranked[0][1]
    eligible = [t for t, g in ranked if g >= config.gain_ratio * max_gain]
    eligible = eligible[: config.per_node_cap]
    results = []
    for rank, test in enumerate(eligible):
        child_used = used | {test.attribute} if isinstance(test, DiscreteTest) else used
        child_enums = []
        for i, part in enumerate(partition(data, test)):
            if len(part) == 0:
                child_enums.append([({}, 0)])
            else:
                child_enums.append(
                    _enumerate_scripts(part, child_used, path + (i,), depth + 1, config)
                )
        for combo in itertools.product(*child_enums):
            script = {path: test.identity()}
            overrides = 1 if rank > 0 else 0
            for sub, n in combo:
                script.update(sub)
                overrides += n
            results.append((script, overrides))
            if len(results) >= _SCRIPT_BUDGET:
                return results
    return results


def generate_alternates(
    train: Dataset, config: AlternatesConfig = None, jobs: int = 1
) -> list[Tree]:
    """Build the family of high-gain alternate trees for ``train``.

    The default tree is element 0 and scripts with fewer overrides come
    first, so truncation to ``config.max_trees`` keeps the most default-like
    tree of every root choice before exploring deeper variations.  Trees
    with duplicate signatures are dropped.
    """
    if len(train) == 0:
        raise EmptyTrainingSetError("cannot generate alternates for an empty set")
    config = config or AlternatesConfig()
    scripts = _enumerate_scripts(train, frozenset(), (), 1, config)
    scripts = sorted(
        enumerate(scripts), key=lambda item: (item[1][1], item[0])
    )  # stable: override count, then enumeration order
    ordered = [script for _, (script, _overrides) in scripts]
    trees: list[Tree] = []
    seen = set()
    chunk = max(4 * jobs, 16)
    for start in range(0, len(ordered), chunk):
        batch = ordered[start : start + chunk]
        if jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                built = list(
                    pool.map(lambda s: build_tree(train, ScriptedPolicy(s)), batch)
                )
        else:
            built = [build_tree(train, ScriptedPolicy(s)) for s in batch]
        for tree in built:
            sig = signature(tree)
            if sig in seen:
                continue
            seen.add(sig)
            trees.append(tree)
            if len(trees) >= config.max_trees:
                return trees
    return trees


def diversity_partition(trees: list[Tree], k: int) -> list[dict]:
    """Enumerate k-subsets of ``trees`` and label each by similarity.

    Labels: ``common-root`` when some pair shares a root test,
    ``common-level2`` when roots are pairwise distinct but some pair has
    the same depth-2 test set, else ``different``.
    """
    if not 1 <= k <= len(trees):
        raise BadKError(f"k must be in [1, {len(trees)}], got {k}")
    sigs = [signature(t) for t in trees]
    out = []
    for combo in itertools.combinations(range(len(trees)), k):
        label = "different"
        for a, b in itertools.combinations(combo, 2):
            if sigs[a].shares_root(sigs[b]):
                label = "common-root"
                break
            if sigs[a].shares_level2(sigs[b]):
                label = "common-level2"
        out.append({"indices": combo, "label": label})
    return out


@dataclass
class Ensemble:
    trees: list[Tree]
    method: str = VOTING  # VOTING | CLASS_PROBABILITY
    weights: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.trees:
            raise ValueError("an ensemble needs at least one tree")
        if self.method not in (VOTING, CLASS_PROBABILITY):
            raise ValueError(f"unknown combination method {self.method!r}")
        if not self.weights:
            self.weights = [1.0] * len(self.trees)
        if len(self.weights) != len(self.trees):
            raise ValueError("one weight per tree required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    @property
    def schema(self):
        return self.trees[0].schema


def tree_estimate(method: str, tree: Tree, instance: Instance):
    """One tree's contribution to a combined estimate.

    Unpruned trees under voting give categorical one-hot votes; pruned
    trees (and the class-probability method) give probability vectors.
    """
    if method == VOTING and tree.pruning is None:
        vec = [0.0] * len(tree.schema.class_labels)
        vec[tree.schema.class_labels.index(classify(tree, instance))] = 1.0
        return vec
    return list(class_probabilities(tree, instance))


def _check_schema(ensemble: Ensemble, instance: Instance):
    labels = ensemble.schema.class_labels
    for t in ensemble.trees:
        if t.schema.class_labels != labels or len(t.schema.attributes) != len(
            ensemble.schema.attributes
        ):
            raise SchemaMismatchError("ensemble trees disagree on schema")
    if len(instance.values) != len(ensemble.schema.attributes):
        raise SchemaMismatchError("instance does not fit the ensemble schema")


def _raw_combined(ensemble: Ensemble, instance: Instance):
    n = len(ensemble.schema.class_labels)
    acc = [0.0] * n
    for tree, w in zip(ensemble.trees, ensemble.weights):
        est = tree_estimate(ensemble.method, tree, instance)
        for i in range(n):
            acc[i] += w * est[i]
    return acc


def combine_probabilities(ensemble: Ensemble, instance: Instance) -> tuple[float, ...]:
    """Weight-normalized mean of the per-tree class estimates."""
    _check_schema(ensemble, instance)
    acc = _raw_combined(ensemble, instance)
    total = sum(ensemble.weights)
    return tuple(a / total for a in acc)


def vote(ensemble: Ensemble, instance: Instance) -> str:
    """Argmax class of the combined estimate.

    Exact ties fall back to the majority class of tree 0's training
    distribution, then to class declaration order.
    """
    _check_schema(ensemble, instance)
    raw = _raw_combined(ensemble, instance)
    best = max(raw)
    tied = [i for i, v in enumerate(raw) if v == best]
    labels = ensemble.schema.class_labels
    if len(tied) > 1:
        majority = ensemble.trees[0].root.dist.majority_index()
        if majority in tied:
            return labels[majority]
    return labels[tied[0]]


# ---------------------------------------------------------------------------
# Ensemble manifest: ordered tree-file references + method + weights.
# ---------------------------------------------------------------------------


def manifest_to_text(tree_files: list[str], method: str, weights: list[float] = None) -> str:
    obj = {
        "format": "multitree-ensemble/1",
        "method": method,
        "trees": list(tree_files),
        "weights": list(weights) if weights else [1.0] * len(tree_files),
    }
    return json.dumps(obj, indent=1) + "\n"


def manifest_from_text(text: str) -> dict:
    obj = json.loads(text)
    if obj.get("format") != "multitree-ensemble/1":
        raise ValueError(f"unsupported manifest format {obj.get('format')!r}")
    return obj
