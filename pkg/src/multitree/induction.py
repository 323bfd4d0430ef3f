"""Top-down decision-tree induction by maximum information gain.

Trees are grown recursively: at every node the candidate tests are ranked
by information gain and a choice policy picks one (the default policy
always takes the top-ranked test).  Every decision point is recorded in a
replayable choice log, so a tree can be rebuilt exactly from its log.

Continuous attributes get binary threshold tests at midpoints between
consecutive distinct values present at the node; discrete attributes
branch once per declared value and are consumed along a path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .dataset import CONTINUOUS, DISCRETE, MISSING, AttributeDecl, Dataset, Instance, Schema
from .errors import (
    EmptyTrainingSetError,
    InapplicableTestError,
    ScriptedChoiceError,
)

GAIN_EPS = 1e-12


@dataclass(frozen=True)
class ClassDistribution:
    """Per-class training counts at a node, aligned with schema.class_labels."""

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def probabilities(self) -> tuple[float, ...]:
        t = self.total
        if t == 0:
            raise ZeroDivisionError("empty distribution has no probabilities")
        return tuple(c / t for c in self.counts)

    def majority_index(self) -> int:
        # ties broken by class declaration order
        best = max(self.counts)
        return self.counts.index(best)


def entropy(dist: ClassDistribution) -> float:
    """Class entropy in bits; 0·log 0 = 0, empty distribution -> 0."""
    total = dist.total
    if total == 0:
        return 0.0
    h = 0.0
    for c in dist.counts:
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


@dataclass(frozen=True)
class DiscreteTest:
    attribute: int
    name: str
    branches: tuple[str, ...]  # declared value per branch

    def identity(self) -> tuple:
        return ("discrete", self.name)

    def branch_count(self) -> int:
        return len(self.branches)

    def route(self, values) -> Optional[int]:
        v = values[self.attribute]
        if v is MISSING:
            return None
        return self.branches.index(v)

    def describe(self) -> str:
        return self.name


@dataclass(frozen=True)
class ThresholdTest:
    attribute: int
    name: str
    threshold: float

    def identity(self) -> tuple:
        return ("threshold", self.name, self.threshold)

    def branch_count(self) -> int:
        return 2

    def route(self, values) -> Optional[int]:
        v = values[self.attribute]
        if v is MISSING:
            return None
        return 0 if v <= self.threshold else 1

    def describe(self) -> str:
        return f"{self.name} <= {self.threshold!r}"


SplitTest = Union[DiscreteTest, ThresholdTest]


@dataclass
class TreeNode:
    dist: ClassDistribution
    # internal nodes
    test: Optional[SplitTest] = None
    children: list["TreeNode"] = field(default_factory=list)
    # leaves
    label: Optional[str] = None

    @property
    def is_leaf(self) -> bool:
        return self.test is None

    def node_count(self) -> int:
        if self.is_leaf:
            return 1
        return 1 + sum(c.node_count() for c in self.children)


@dataclass(frozen=True)
class ChoicePoint:
    path: tuple[int, ...]
    chosen: tuple  # test identity
    ranked: tuple  # ((identity, gain), ...)


@dataclass
class Tree:
    schema: Schema
    root: TreeNode
    choice_log: tuple[ChoicePoint, ...] = ()
    pruning: Optional[dict] = None  # method + parameters, set by pruning

    @property
    def size(self) -> int:
        return self.root.node_count()


class DefaultPolicy:
    """Always take the top-ranked (maximum-gain) test."""

    def select(self, path, ranked):
        return 0


class ScriptedPolicy:
    """Replay recorded selections; unlisted nodes fall back to the default.

    ``choices`` maps node path -> test identity tuple.
    """

    def __init__(self, choices: dict):
        self.choices = dict(choices)

    def select(self, path, ranked):
        ident = self.choices.get(tuple(path))
        if ident is None:
            return 0
        for i, (test, _gain) in enumerate(ranked):
            if test.identity() == tuple(ident):
                return i
        raise ScriptedChoiceError(path, f"test {ident!r} not valid here")


class CallbackPolicy:
    """Delegate each decision to an external chooser given the ranked list."""

    def __init__(self, chooser: Callable):
        self.chooser = chooser

    def select(self, path, ranked):
        return self.chooser(path, ranked)


ChoicePolicy = Union[DefaultPolicy, ScriptedPolicy, CallbackPolicy]


def class_distribution(data: Dataset) -> ClassDistribution:
    counts = [0] * len(data.schema.class_labels)
    index = {label: i for i, label in enumerate(data.schema.class_labels)}
    for inst in data.instances:
        counts[index[inst.label]] += 1
    return ClassDistribution(tuple(counts))


def _branch_count_tables(data: Dataset, test: SplitTest):
    """Per-branch class-count tables over instances known on the tested attribute."""
    n_classes = len(data.schema.class_labels)
    index = {label: i for i, label in enumerate(data.schema.class_labels)}
    tables = [[0] * n_classes for _ in range(test.branch_count())]
    for inst in data.instances:
        b = test.route(inst.values)
        if b is not None:
            tables[b][index[inst.label]] += 1
    return [ClassDistribution(tuple(t)) for t in tables]


def information_gain(data: Dataset, test: SplitTest) -> float:
    """Entropy reduction of splitting ``data`` with ``test``.

    Instances missing the tested attribute are excluded: the parent
    entropy and the branch weights are both taken over the known subset.
    """
    decl = data.schema.attributes[test.attribute]
    if isinstance(test, DiscreteTest) and decl.kind != DISCRETE:
        raise InapplicableTestError(f"{test.name} is not discrete")
    if isinstance(test, ThresholdTest) and decl.kind != CONTINUOUS:
        raise InapplicableTestError(f"{test.name} is not continuous")
    branches = _branch_count_tables(data, test)
    known = sum(b.total for b in branches)
    if known == 0:
        return 0.0
    parent = ClassDistribution(
        tuple(sum(b.counts[i] for b in branches) for i in range(len(branches[0].counts)))
    )
    h = entropy(parent)
    for b in branches:
        if b.total:
            h -= (b.total / known) * entropy(b)
    return h


def candidate_tests(
    data: Dataset, schema: Schema = None, used: frozenset = frozenset()
) -> list[SplitTest]:
    """Enumerate applicable tests: each unused discrete attribute, plus
    midpoint thresholds for every continuous attribute."""
    schema = schema or data.schema
    tests: list[SplitTest] = []
    for i, decl in enumerate(schema.attributes):
        if decl.kind == DISCRETE:
            if i not in used:
                tests.append(DiscreteTest(i, decl.name, decl.values))
        else:
            present = sorted(
                {inst.values[i] for inst in data.instances if inst.values[i] is not MISSING}
            )
            for lo, hi in zip(present, present[1:]):
                tests.append(ThresholdTest(i, decl.name, (lo + hi) / 2.0))
    return tests


def rank_tests(
    data: Dataset, schema: Schema = None, used: frozenset = frozenset()
) -> list[tuple[SplitTest, float]]:
    """Candidates sorted by gain descending; ties by schema attribute
    order, then ascending threshold.  The head is the default choice."""
    scored = [(t, information_gain(data, t)) for t in candidate_tests(data, schema, used)]
    scored.sort(
        key=lambda tg: (
            -tg[1],
            tg[0].attribute,
            tg[0].threshold if isinstance(tg[0], ThresholdTest) else -math.inf,
        )
    )
    return scored


def partition(data: Dataset, test: SplitTest) -> list[Dataset]:
    """Split instances by test outcome; instances missing the tested value
    go to the branch holding the most known instances (ties: first branch)."""
    groups: list[list[Instance]] = [[] for _ in range(test.branch_count())]
    missing = []
    for inst in data.instances:
        b = test.route(inst.values)
        if b is None:
            missing.append(inst)
        else:
            groups[b].append(inst)
    if missing:
        sizes = [len(g) for g in groups]
        groups[sizes.index(max(sizes))].extend(missing)
    return [Dataset(data.schema, tuple(g)) for g in groups]


def majority_branch(tree_node: TreeNode) -> int:
    totals = [c.dist.total for c in tree_node.children]
    return totals.index(max(totals))


def _grow(data, used, path, policy, log):
    dist = class_distribution(data)
    labels = data.schema.class_labels
    if max(dist.counts) == dist.total:  # pure
        return TreeNode(dist, label=labels[dist.majority_index()])
    ranked = rank_tests(data, used=used)
    if not ranked or ranked[0][1] <= GAIN_EPS:
        return TreeNode(dist, label=labels[dist.majority_index()])
    choice = policy.select(path, ranked)
    if not 0 <= choice < len(ranked):
        raise ScriptedChoiceError(path, f"selection index {choice} out of range")
    test = ranked[choice][0]
    log.append(
        ChoicePoint(
            tuple(path),
            test.identity(),
            tuple((t.identity(), g) for t, g in ranked),
        )
    )
    child_used = used | {test.attribute} if isinstance(test, DiscreteTest) else used
    children = []
    for i, part in enumerate(partition(data, test)):
        if len(part) == 0:
            zero = ClassDistribution((0,) * len(labels))
            children.append(TreeNode(zero, label=labels[dist.majority_index()]))
        else:
            children.append(_grow(part, child_used, path + (i,), policy, log))
    return TreeNode(dist, test=test, children=children)


def build_tree(train: Dataset, policy: ChoicePolicy = None) -> Tree:
    """Grow a tree over the full training set under the given choice policy."""
    if len(train) == 0:
        raise EmptyTrainingSetError("cannot build a tree from an empty training set")
    policy = policy or DefaultPolicy()
    log: list[ChoicePoint] = []
    root = _grow(train, frozenset(), (), policy, log)
    return Tree(train.schema, root, tuple(log))


def script_from_log(choice_log) -> dict:
    """Turn a choice log into a ScriptedPolicy mapping (path -> identity)."""
    return {cp.path: cp.chosen for cp in choice_log}


def _route_to_leaf(tree: Tree, instance: Instance):
    node = tree.root
    fallback = node.dist if node.dist.total > 0 else None
    while not node.is_leaf:
        b = node.test.route(instance.values)
        if b is None:
            b = majority_branch(node)
        node = node.children[b]
        if node.dist.total > 0:
            fallback = node.dist
    return node, fallback


def classify(tree: Tree, instance: Instance) -> str:
    """Route to a leaf and return its label."""
    node, _ = _route_to_leaf(tree, instance)
    return node.label


def class_probabilities(tree: Tree, instance: Instance) -> tuple[float, ...]:
    """Leaf counts normalized to probabilities; zero-count leaves fall back
    to the nearest ancestor with a positive total."""
    node, fallback = _route_to_leaf(tree, instance)
    dist = node.dist if node.dist.total > 0 else fallback
    return dist.probabilities()


# ---------------------------------------------------------------------------
# Serialization: a stable JSON text format, round-trip safe.
# ---------------------------------------------------------------------------

FORMAT_TAG = "multitree/1"


def _test_to_json(test: SplitTest):
    if isinstance(test, DiscreteTest):
        return {"type": "discrete", "attribute": test.name}
    return {"type": "threshold", "attribute": test.name, "threshold": test.threshold}


def _test_from_json(obj, schema: Schema) -> SplitTest:
    idx = schema.attribute_index(obj["attribute"])
    decl = schema.attributes[idx]
    if obj["type"] == "discrete":
        return DiscreteTest(idx, decl.name, decl.values)
    return ThresholdTest(idx, decl.name, float(obj["threshold"]))


def _node_to_json(node: TreeNode):
    if node.is_leaf:
        return {"kind": "leaf", "counts": list(node.dist.counts), "label": node.label}
    return {
        "kind": "internal",
        "test": _test_to_json(node.test),
        "counts": list(node.dist.counts),
        "children": [_node_to_json(c) for c in node.children],
    }


def _node_from_json(obj, schema: Schema) -> TreeNode:
    dist = ClassDistribution(tuple(int(c) for c in obj["counts"]))
    if obj["kind"] == "leaf":
        return TreeNode(dist, label=obj["label"])
    test = _test_from_json(obj["test"], schema)
    children = [_node_from_json(c, schema) for c in obj["children"]]
    return TreeNode(dist, test=test, children=children)


def tree_to_json(tree: Tree) -> dict:
    return {
        "format": FORMAT_TAG,
        "class_labels": list(tree.schema.class_labels),
        "attributes": [
            {"name": a.name, "kind": a.kind, "values": list(a.values)}
            for a in tree.schema.attributes
        ],
        "pruning": tree.pruning,
        "size": tree.size,
        "root": _node_to_json(tree.root),
    }


def tree_to_text(tree: Tree) -> str:
    return json.dumps(tree_to_json(tree), indent=1) + "\n"


def tree_from_json(obj) -> Tree:
    if obj.get("format") != FORMAT_TAG:
        raise ValueError(f"unsupported tree format {obj.get('format')!r}")
    attrs = tuple(
        AttributeDecl(a["name"], a["kind"], tuple(a.get("values", [])))
        for a in obj["attributes"]
    )
    schema = Schema(attrs, tuple(obj["class_labels"]))
    root = _node_from_json(obj["root"], schema)
    return Tree(schema, root, pruning=obj.get("pruning"))


def tree_from_text(text: str) -> Tree:
    return tree_from_json(json.loads(text))


def choice_log_to_json(choice_log) -> list:
    return [
        {
            "path": list(cp.path),
            "chosen": list(cp.chosen),
            "ranked": [{"test": list(t), "gain": g} for t, g in cp.ranked],
        }
        for cp in choice_log
    ]


def choice_log_from_json(obj) -> tuple[ChoicePoint, ...]:
    return tuple(
        ChoicePoint(
            tuple(cp["path"]),
            tuple(cp["chosen"]),
            tuple((tuple(r["test"]), r["gain"]) for r in cp["ranked"]),
        )
        for cp in obj
    )
