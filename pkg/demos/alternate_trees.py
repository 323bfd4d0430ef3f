"""Generate a family of alternate trees and compare their shapes.

On noisy data several tests often have nearly the same information gain at
the root, and the greedy tie-break hides that. This script builds every
tree reachable by overriding near-maximal choices in the top two levels and
prints each tree's root test, size, and individual test error.
"""

from multitree.ensemble import AlternatesConfig, generate_alternates, signature
from multitree.evaluation import evaluate
from multitree.pruning import prune
from multitree.synthetic import benchmark_split


def main():
    train, test = benchmark_split(seed=11)
    config = AlternatesConfig(override_depth=2, gain_ratio=0.25, per_node_cap=3,
                              max_trees=12)
    trees = generate_alternates(train, config)
    print(f"{len(trees)} alternate trees from {len(train)} training instances\n")
    print(f"{'tree':>4}  {'root test':<24}{'size':>5}  {'err%':>6}  {'pruned err%':>11}")
    for i, tree in enumerate(trees):
        sig = signature(tree)
        root = " ".join(str(x) for x in sig.root_test)
        err = evaluate(tree, test).percent_error
        perr = evaluate(prune(tree), test).percent_error
        print(f"{i:>4}  {root:<24}{tree.size:>5}  {err:>6.2f}  {perr:>11.2f}")
    roots = {signature(t).root_test for t in trees}
    print(f"\n{len(roots)} distinct root tests across the family")


if __name__ == "__main__":
    main()
