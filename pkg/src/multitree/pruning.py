"""Collapse subtrees into leaves, producing smaller class-probability trees.

Two criteria are available:

* pessimistic (default): compare the node's own error estimate against the
  subtree's, each leaf penalized by a continuity correction, with a z·SE
  allowance on the subtree estimate.  Needs no extra data.
* reduced-error: collapse whenever the holdout error does not increase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import Dataset, Instance
from .errors import EmptyHoldoutError
from .induction import ClassDistribution, Tree, TreeNode, majority_branch


@dataclass(frozen=True)
class Pessimistic:
    z: float = 1.0
    correction: float = 0.5


@dataclass(frozen=True)
class ReducedError:
    holdout: Dataset


def _node_errors(dist: ClassDistribution) -> int:
    return dist.total - max(dist.counts)


def _leaf_for(node: TreeNode, labels) -> TreeNode:
    return TreeNode(node.dist, label=labels[node.dist.majority_index()])


def _subtree_penalized_errors(node: TreeNode, correction: float) -> float:
    if node.is_leaf:
        return _node_errors(node.dist) + correction
    return sum(_subtree_penalized_errors(c, correction) for c in node.children)


def _prune_pessimistic(node, labels, z, correction, path, collapsed):
    if node.is_leaf:
        return node
    children = [
        _prune_pessimistic(c, labels, z, correction, path + (i,), collapsed)
        for i, c in enumerate(node.children)
    ]
    pruned = TreeNode(node.dist, test=node.test, children=children)
    subtree_err = _subtree_penalized_errors(pruned, correction)
    total = node.dist.total
    se = 0.0
    if total > 0:
        se = math.sqrt(max(subtree_err * (total - subtree_err), 0.0) / total)
    if _node_errors(node.dist) + correction <= subtree_err + z * se:
        collapsed.append(path)
        return _leaf_for(node, labels)
    return pruned


def _classify_node(node: TreeNode, inst: Instance) -> str:
    while not node.is_leaf:
        b = node.test.route(inst.values)
        if b is None:
            b = majority_branch(node)
        node = node.children[b]
    return node.label


def _prune_reduced_error(node, labels, holdout, path, collapsed):
    if node.is_leaf:
        return node
    # split holdout the same way prediction routes instances
    groups = [[] for _ in node.children]
    for inst in holdout:
        b = node.test.route(inst.values)
        if b is None:
            b = majority_branch(node)
        groups[b].append(inst)
    children = [
        _prune_reduced_error(c, labels, g, path + (i,), collapsed)
        for i, (c, g) in enumerate(zip(node.children, groups))
    ]
    pruned = TreeNode(node.dist, test=node.test, children=children)
    leaf_label = labels[node.dist.majority_index()]
    leaf_err = sum(1 for inst in holdout if inst.label != leaf_label)
    subtree_err = sum(1 for inst in holdout if inst.label != _classify_node(pruned, inst))
    if leaf_err <= subtree_err:
        collapsed.append(path)
        return _leaf_for(node, labels)
    return pruned


def prune(tree: Tree, method: Pessimistic | ReducedError = None) -> Tree:
    """Return a pruned copy of ``tree``; the input is left untouched.

    The result records the method, its parameters, and the collapsed node
    paths in ``tree.pruning``; the original choice log is preserved.
    """
    method = method or Pessimistic()
    labels = tree.schema.class_labels
    collapsed: list[tuple[int, ...]] = []
    if isinstance(method, Pessimistic):
        root = _prune_pessimistic(
            tree.root, labels, method.z, method.correction, (), collapsed
        )
        meta = {
            "method": "pessimistic",
            "z": method.z,
            "correction": method.correction,
        }
    else:
        if len(method.holdout) == 0:
            raise EmptyHoldoutError("reduced-error pruning needs a non-empty holdout")
        root = _prune_reduced_error(
            tree.root, labels, list(method.holdout.instances), (), collapsed
        )
        meta = {"method": "reduced-error", "holdout_size": len(method.holdout)}
    meta["collapsed"] = [list(p) for p in sorted(collapsed)]
    return Tree(tree.schema, root, tree.choice_log, pruning=meta)
