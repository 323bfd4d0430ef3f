"""Interactive tree-building sessions.

A session grows one tree breadth-first: the frontier queue holds the
unexpanded node paths, top levels first, and every frontier head comes
with the same ranked test list the batch builder would compute there.
Choosing index 0 at every prompt therefore reproduces the batch
maximum-gain tree exactly; autocomplete finishes the remainder the same
way.  Completed trees accumulate on the session's ensemble shelf.
"""

from __future__ import annotations

import uuid
from collections import deque
from dataclasses import dataclass, field

from .dataset import Dataset
from .errors import (
    EmptyShelfError,
    InvalidChoiceError,
    TreeCompleteError,
)
from .induction import (
    GAIN_EPS,
    ChoicePoint,
    ClassDistribution,
    DiscreteTest,
    Tree,
    TreeNode,
    class_distribution,
    partition,
    rank_tests,
)


@dataclass
class _PendingNode:
    path: tuple[int, ...]
    data: Dataset
    used: frozenset
    node: TreeNode  # placeholder leaf, converted in place when split


@dataclass
class Session:
    session_id: str
    train: Dataset
    gain_ratio: float = 0.85
    root: TreeNode = None
    frontier: deque = field(default_factory=deque)
    pending: dict = field(default_factory=dict)  # path -> _PendingNode
    choice_log: list = field(default_factory=list)
    tree: Tree = None  # set once complete
    shelf: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.frontier


def _stopped(data: Dataset, used: frozenset):
    """Return the ranked list if the node should be split, else None."""
    dist = class_distribution(data)
    if max(dist.counts) == dist.total:
        return None
    ranked = rank_tests(data, used=used)
    if not ranked or ranked[0][1] <= GAIN_EPS:
        return None
    return ranked


def _leaf(data: Dataset) -> TreeNode:
    dist = class_distribution(data)
    return TreeNode(dist, label=data.schema.class_labels[dist.majority_index()])


def create_session(train: Dataset, gain_ratio: float = 0.85) -> Session:
    session = Session(uuid.uuid4().hex, train, gain_ratio)
    session.root = _leaf(train)
    if _stopped(train, frozenset()) is not None:
        pend = _PendingNode((), train, frozenset(), session.root)
        session.pending[()] = pend
        session.frontier.append(())
    else:
        session.tree = _finalize(session)
    return session


def _finalize(session: Session) -> Tree:
    return Tree(session.train.schema, session.root, tuple(session.choice_log))


def frontier_view(session: Session) -> dict:
    """The frontier head with its ranked tests; raises once the tree is done."""
    if session.complete:
        raise TreeCompleteError("tree is complete")
    pend = session.pending[session.frontier[0]]
    ranked = rank_tests(pend.data, used=pend.used)
    max_gain = ranked[0][1]
    return {
        "path": list(pend.path),
        "counts": list(pend.node.dist.counts),
        "class_labels": list(session.train.schema.class_labels),
        "default_index": 0,
        "gain_ratio_threshold": session.gain_ratio,
        "ranked": [
            {
                "test": _test_payload(t),
                "gain": g,
                "ratio": (g / max_gain) if max_gain > 0 else 0.0,
            }
            for t, g in ranked
        ],
    }


def _test_payload(test) -> dict:
    if isinstance(test, DiscreteTest):
        return {"type": "discrete", "attribute": test.name}
    return {"type": "threshold", "attribute": test.name, "threshold": test.threshold}


def _match_test(ranked, payload):
    for i, (t, _g) in enumerate(ranked):
        if _test_payload(t) == payload:
            return i
    raise InvalidChoiceError(f"test {payload!r} is not valid at this node")


def choose(session: Session, selection) -> None:
    """Split the frontier head with the selected test (index or payload).

    Any ranked test may be chosen, including below-threshold ones; the
    session state is unchanged when the selection is invalid.
    """
    if session.complete:
        raise TreeCompleteError("tree is complete")
    pend = session.pending[session.frontier[0]]
    ranked = rank_tests(pend.data, used=pend.used)
    if isinstance(selection, dict):
        index = _match_test(ranked, selection)
    else:
        index = selection
        if not isinstance(index, int) or not 0 <= index < len(ranked):
            raise InvalidChoiceError(f"selection index {selection!r} out of range")
    test = ranked[index][0]
    session.frontier.popleft()
    del session.pending[pend.path]
    session.choice_log.append(
        ChoicePoint(
            pend.path,
            test.identity(),
            tuple((t.identity(), g) for t, g in ranked),
        )
    )
    used = (
        pend.used | {test.attribute} if isinstance(test, DiscreteTest) else pend.used
    )
    labels = session.train.schema.class_labels
    children = []
    for i, part in enumerate(partition(pend.data, test)):
        if len(part) == 0:
            zero = ClassDistribution((0,) * len(labels))
            children.append(TreeNode(zero, label=labels[pend.node.dist.majority_index()]))
            continue
        child = _leaf(part)
        children.append(child)
        if _stopped(part, used) is not None:
            path = pend.path + (i,)
            session.pending[path] = _PendingNode(path, part, used, child)
            session.frontier.append(path)
    # convert the placeholder leaf into an internal node in place
    pend.node.test = test
    pend.node.children = children
    pend.node.label = None
    if session.complete:
        session.tree = _finalize(session)


def autocomplete(session: Session) -> Tree:
    """Expand the remaining frontier with default choices and shelve the tree."""
    while not session.complete:
        choose(session, 0)
    if session.tree not in session.shelf:
        session.shelf.append(session.tree)
    return session.tree


def shelve_pruned(session: Session, pruned: Tree) -> Tree:
    """Replace the session's completed tree (and its shelf entry) with a
    pruned version."""
    if session.tree is None:
        raise TreeCompleteError("tree is not complete yet")
    if session.shelf and session.shelf[-1] is session.tree:
        session.shelf[-1] = pruned
    session.tree = pruned
    return pruned


def shelf_eval(session: Session, test: Dataset, method: str):
    """Per-tree and combined reports for the shelf, plus similarity warnings."""
    from .ensemble import Ensemble, signature
    from .evaluation import evaluate

    if not session.shelf:
        raise EmptyShelfError("no completed trees on the shelf")
    reports = [
        evaluate(t, test, model_id=f"tree{i}") for i, t in enumerate(session.shelf)
    ]
    combined = evaluate(
        Ensemble(list(session.shelf), method=method), test, model_id="ensemble"
    )
    sigs = [signature(t) for t in session.shelf]
    warnings = []
    for i in range(len(sigs)):
        for j in range(i + 1, len(sigs)):
            if sigs[i].shares_root(sigs[j]):
                warnings.append(
                    {"trees": [i, j], "kind": "common-root"}
                )
            elif sigs[i].shares_level2(sigs[j]):
                warnings.append({"trees": [i, j], "kind": "common-level2"})
    return reports, combined, warnings
