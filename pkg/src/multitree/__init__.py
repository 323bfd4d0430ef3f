"""Multiple decision trees: induction, alternates, pruning, combination,
evaluation, and a brute-force Bayesian oracle for two-class rules."""

from .dataset import Dataset, Instance, Schema, parse_dataset, parse_schema, split
from .ensemble import (
    AlternatesConfig,
    Ensemble,
    combine_probabilities,
    diversity_partition,
    generate_alternates,
    signature,
    vote,
)
from .evaluation import EvalReport, evaluate, half_brier, percentage_error, sweep
from .induction import (
    Tree,
    build_tree,
    class_probabilities,
    classify,
    entropy,
    information_gain,
    rank_tests,
    tree_from_text,
    tree_to_text,
)
from .pruning import Pessimistic, ReducedError, prune

__all__ = [
    "AlternatesConfig",
    "Dataset",
    "Ensemble",
    "EvalReport",
    "Instance",
    "Pessimistic",
    "ReducedError",
    "Schema",
    "Tree",
    "build_tree",
    "class_probabilities",
    "classify",
    "combine_probabilities",
    "diversity_partition",
    "entropy",
    "evaluate",
    "generate_alternates",
    "half_brier",
    "information_gain",
    "parse_dataset",
    "parse_schema",
    "percentage_error",
    "prune",
    "rank_tests",
    "signature",
    "split",
    "sweep",
    "tree_from_text",
    "tree_to_text",
    "vote",
]

__version__ = "0.1.0"
