"""Command-line entry point for the whole pipeline.

Subcommands: build, prune, alternates, combine, eval, sweep, bayes, serve.
All emitted tables are CSV with headers; tree files use the JSON tree
format.  Reruns with identical flags produce byte-identical outputs.
Exit codes: 2 usage error, 3 data error, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import bayes as bayes_mod
from .dataset import Dataset, parse_dataset, parse_schema
from .ensemble import (
    CLASS_PROBABILITY,
    VOTING,
    AlternatesConfig,
    Ensemble,
    combine_probabilities,
    generate_alternates,
    manifest_from_text,
    manifest_to_text,
    signature,
    vote,
)
from .errors import DataError, MultitreeError
from .evaluation import curve_export, evaluate, sweep
from .induction import (
    build_tree,
    choice_log_to_json,
    tree_from_text,
    tree_to_text,
)
from .pruning import Pessimistic, ReducedError, prune

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4


def _load_data(schema_path: str, data_path: str) -> Dataset:
    schema = parse_schema(Path(schema_path).read_text())
    return parse_dataset(Path(data_path).read_text(), schema)


def _load_trees(tree_dir: str):
    paths = sorted(Path(tree_dir).glob("*.tree"))
    if not paths:
        raise DataError(f"no .tree files in {tree_dir}")
    return [tree_from_text(p.read_text()) for p in paths], paths


def _csv_out(rows, header):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def cmd_build(args):
    import json

    train = _load_data(args.schema, args.data)
    tree = build_tree(train)
    Path(args.out).write_text(tree_to_text(tree))
    if args.log:
        Path(args.log).write_text(
            json.dumps(choice_log_to_json(tree.choice_log), indent=1) + "\n"
        )
    return 0


def cmd_prune(args):
    tree = tree_from_text(Path(args.tree).read_text())
    if args.method == "pessimistic":
        method = Pessimistic(z=args.z, correction=args.correction)
    else:
        if not (args.schema and args.data):
            print("reduced-error pruning needs --schema and --data", file=sys.stderr)
            return EXIT_USAGE
        method = ReducedError(_load_data(args.schema, args.data))
    Path(args.out).write_text(tree_to_text(prune(tree, method)))
    return 0


def cmd_alternates(args):
    train = _load_data(args.schema, args.data)
    config = AlternatesConfig(
        override_depth=args.depth,
        gain_ratio=args.ratio,
        per_node_cap=args.cap,
        max_trees=args.max_trees,
    )
    trees = generate_alternates(train, config, jobs=args.jobs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = []
    rows = []
    for i, tree in enumerate(trees):
        name = f"tree{i:02d}.tree"
        (out_dir / name).write_text(tree_to_text(tree))
        names.append(name)
        sig = signature(tree)
        rows.append(
            [
                name,
                tree.size,
                "|".join(map(str, sig.root_test or ())),
                ";".join(
                    sorted("|".join(map(str, t)) for t in sig.level2_tests)
                ),
            ]
        )
    (out_dir / "signatures.csv").write_text(
        _csv_out(rows, ["tree", "size", "root_test", "level2_tests"])
    )
    (out_dir / "manifest.json").write_text(manifest_to_text(names, VOTING))
    return 0


def _load_ensemble(manifest_path: str) -> Ensemble:
    base = Path(manifest_path).parent
    manifest = manifest_from_text(Path(manifest_path).read_text())
    trees = [tree_from_text((base / ref).read_text()) for ref in manifest["trees"]]
    return Ensemble(trees, method=manifest["method"], weights=list(manifest["weights"]))


def cmd_combine(args):
    ensemble = _load_ensemble(args.manifest)
    test = _load_data(args.schema, args.data)
    rows = []
    for i, inst in enumerate(test):
        probs = combine_probabilities(ensemble, inst)
        rows.append(
            [i, inst.label, vote(ensemble, inst)] + [repr(p) for p in probs]
        )
    header = ["instance", "label", "prediction"] + [
        f"p_{c}" for c in ensemble.schema.class_labels
    ]
    output = _csv_out(rows, header)
    if args.out:
        Path(args.out).write_text(output)
    else:
        sys.stdout.write(output)
    return 0


def cmd_eval(args):
    test = _load_data(args.schema, args.data)
    if args.tree:
        model = tree_from_text(Path(args.tree).read_text())
        model_id = args.tree
    else:
        model = _load_ensemble(args.manifest)
        model_id = args.manifest
    report = evaluate(model, test, model_id=model_id)
    sys.stdout.write(
        _csv_out(
            [[report.model_id, f"{report.percent_error:.2f}",
              f"{report.half_brier:.6f}", report.n]],
            ["model", "percent_error", "half_brier", "n"],
        )
    )
    return 0


def cmd_sweep(args):
    trees, _ = _load_trees(args.trees)
    test = _load_data(args.schema, args.data)
    counts = [int(c) for c in args.counts.split(",")]
    rows = sweep(
        trees,
        test,
        counts,
        prefer_different=args.prefer_different,
        method=args.method,
        allow_even_ties=args.allow_even_ties,
    )
    table = _csv_out(
        [
            [r.tree_count, f"{r.mean_percent_error:.2f}", r.combination_count, r.method]
            for r in rows
        ],
        ["trees", "mean_percent_error", "combinations", "method"],
    )
    if args.out:
        Path(args.out).write_text(table)
    else:
        sys.stdout.write(table)
    if args.curve:
        Path(args.curve).write_text(curve_export(rows))
    return 0


def cmd_bayes(args):
    counts = bayes_mod.counts_from_text(Path(args.counts).read_text())
    if args.prior == "uniform":
        prior = bayes_mod.uniform_prior
    else:
        prior = bayes_mod.beta_prior(args.alpha, args.beta)
    post = bayes_mod.posterior(prior, counts, args.grid)
    if args.compare:
        true_rule = bayes_mod.ClassificationRule(
            tuple(float(x) for x in args.true_rule.split(","))
        )
        table = bayes_mod.compare_predictors(
            counts, true_rule, args.trials, args.seed, prior=prior, grid_size=args.grid
        )
        sys.stdout.write(
            _csv_out(
                [[name, repr(err)] for name, err in sorted(table.items())],
                ["predictor", "expected_error"],
            )
        )
        return 0
    rows = []
    for i, (n, r) in enumerate(counts.counts):
        diag = bayes_mod.flatness(post, i)
        rows.append(
            [
                i,
                n,
                r,
                repr(bayes_mod.transductive_predict(post, i)),
                repr(bayes_mod.map_predict(post, i)),
                repr(diag["posterior_sd"]),
                repr(diag["hdr_mass"]),
            ]
        )
    sys.stdout.write(
        _csv_out(
            rows,
            ["type", "n", "r", "transduction", "map", "posterior_sd", "hdr_mass"],
        )
    )
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multitree",
        description="Build, combine, and evaluate multiple decision trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="train a tree and write it to a file")
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--log", help="also write the choice log (JSON)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("prune", help="prune a tree file")
    p.add_argument("--tree", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=["pessimistic", "reduced-error"],
                   default="pessimistic")
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--correction", type=float, default=0.5)
    p.add_argument("--schema", help="holdout schema (reduced-error)")
    p.add_argument("--data", help="holdout data (reduced-error)")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("alternates", help="generate the alternate-tree family")
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--ratio", type=float, default=0.85)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--max-trees", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_alternates)

    p = sub.add_parser("combine", help="predict with an ensemble manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", help="predictions CSV (default stdout)")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("eval", help="score a tree or ensemble on a test set")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tree")
    group.add_argument("--manifest")
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="error versus number of combined trees")
    p.add_argument("--trees", required=True, help="directory of .tree files")
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--counts", required=True, help="comma-separated sizes")
    p.add_argument("--prefer-different", action="store_true")
    p.add_argument("--method", choices=[VOTING, CLASS_PROBABILITY], default=VOTING)
    p.add_argument("--allow-even-ties", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="sweep table CSV (default stdout)")
    p.add_argument("--curve", help="also write (k, score) curve CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bayes", help="grid posterior over classification rules")
    p.add_argument("--counts", required=True, help="file of 'n r' lines")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--prior", choices=["uniform", "beta"], default="uniform")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--compare", action="store_true",
                   help="Monte-Carlo predictor comparison")
    p.add_argument("--true-rule", help="comma-separated true positive rates")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, help="required with --compare")
    p.set_defaults(func=cmd_bayes)

    p = sub.add_parser("serve", help="start the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "compare", False) and (args.seed is None or not args.true_rule):
        parser.error("--compare requires --seed and --true-rule")
    try:
        return args.func(args)
    except (DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MultitreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
