"""Test error versus the number of voted trees.

Combining a few structurally different trees usually beats the average
single tree on noisy data. This script averages the sweep over ten seeds of
the bundled synthetic benchmark and prints the error curve, once over all
tree subsets and once restricted to the most diverse subsets.
"""

from multitree.ensemble import AlternatesConfig, generate_alternates
from multitree.evaluation import sweep
from multitree.synthetic import PUBLISHED_SEEDS, benchmark_split

COUNTS = [1, 3, 5]
CONFIG = AlternatesConfig(override_depth=2, gain_ratio=0.25, per_node_cap=3,
                          max_trees=12)


def main():
    totals = {(c, d): 0.0 for c in COUNTS for d in (False, True)}
    for seed in PUBLISHED_SEEDS:
        train, test = benchmark_split(seed)
        trees = generate_alternates(train, CONFIG)
        for diverse in (False, True):
            for row in sweep(trees, test, COUNTS, prefer_different=diverse):
                totals[(row.tree_count, diverse)] += row.mean_percent_error
    n = len(PUBLISHED_SEEDS)
    print(f"mean test error over {n} seeds (%)\n")
    print(f"{'trees':>5}  {'all subsets':>12}  {'diverse only':>12}")
    for c in COUNTS:
        print(f"{c:>5}  {totals[(c, False)] / n:>12.2f}  {totals[(c, True)] / n:>12.2f}")


if __name__ == "__main__":
    main()
