"""Command line entry point: ``isct cluster | explain | eval | synth``."""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import io
from .metrics import evaluate
from .patterns import MiningConfig
from .projection import InfeasibleKError, ProjectionConfig
from .synth import planted_sequences
from .tree import TreeConfig, TreeFormatError, export_tree, fit_predict, tree_from_json


class CliError(Exception):
    pass


def _positive(name):
    def check(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}")
        if value < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1, got {value}")
        return value
    return check


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isct", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cluster", help="fit a clustering tree and write its outputs")
    c.add_argument("--input", required=True)
    c.add_argument("--format", choices=("tokens", "spmf"), default="tokens")
    c.add_argument("--labels", help="ground-truth labels; enables --out-metrics")
    c.add_argument("--k", type=_positive("k"), required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--boost", action=argparse.BooleanOptionalAction, default=True)
    c.add_argument("--num-patterns", type=_positive("num-patterns"), default=2048)
    c.add_argument("--max-pattern-len", type=_positive("max-pattern-len"), default=None,
                   help="random/mined pattern length cap (default: 5, or the "
                        "shortest sequence length when that is below 10)")
    c.add_argument("--top-frequent", type=_positive("top-frequent"), default=512)
    c.add_argument("--min-split", type=_positive("min-split"), default=5)
    c.add_argument("--out-assignments")
    c.add_argument("--out-tree")
    c.add_argument("--out-dot")
    c.add_argument("--out-metrics")

    e = sub.add_parser("explain", help="render a tree JSON file")
    e.add_argument("tree")
    e.add_argument("--format", choices=("text", "dot"), default="text")

    v = sub.add_parser("eval", help="score an assignments file against labels")
    v.add_argument("--assignments", required=True)
    v.add_argument("--labels", required=True)
    v.add_argument("--out-metrics")

    s = sub.add_parser("synth", help="write a planted-signature dataset")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--per-cluster", type=int, default=10)
    s.add_argument("--alphabet-size", type=int, default=12)
    s.add_argument("--noise-len", type=int, default=10)
    s.add_argument("--overlap", type=int, default=0,
                   help="items shared by consecutive signatures (0-2)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="tokens file; labels go to <out>.labels")
    s.add_argument("--out-labels")
    return parser


def _write(path, text):
    try:
        io.atomic_write(path, text)
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror or e}") from None


def cmd_cluster(args) -> int:
    try:
        db = io.load_database(args.input, args.format)
    except OSError as e:
        raise CliError(f"cannot read {args.input}: {e.strerror or e}") from None
    truth = None
    if args.labels:
        try:
            truth = io.load_labels(args.labels)
        except OSError as e:
            raise CliError(f"cannot read {args.labels}: {e.strerror or e}") from None
        if len(truth) != len(db):
            raise CliError(f"{len(truth)} labels for {len(db)} sequences")
    if args.k > len(db):
        raise CliError(f"infeasible k={args.k}: only {len(db)} sequences")

    config = TreeConfig(
        k=args.k, boost=args.boost, min_split=args.min_split, seed=args.seed,
        mining=MiningConfig(max_patterns_per_cluster=args.top_frequent),
        projection=ProjectionConfig(num_patterns=args.num_patterns,
                                    max_random_len=args.max_pattern_len))
    start = time.perf_counter()
    tree, clustering = fit_predict(db, config)
    runtime_ms = (time.perf_counter() - start) * 1000

    if args.out_assignments:
        _write(args.out_assignments, io.format_assignments(clustering.labels))
    if args.out_tree:
        _write(args.out_tree, export_tree(tree, "json"))
    if args.out_dot:
        _write(args.out_dot, export_tree(tree, "dot"))
    if args.out_metrics:
        if truth is None:
            raise CliError("--out-metrics needs --labels")
        metrics = evaluate(clustering.labels, truth)
        metrics.update(leaf_count=tree.leaf_count, k_requested=tree.k_requested,
                       seed=args.seed, runtime_ms=round(runtime_ms, 3))
        _write(args.out_metrics, json.dumps(metrics, indent=2) + "\n")
    if not (args.out_assignments or args.out_tree):
        sys.stdout.write(export_tree(tree, "text"))
    return 0


def cmd_explain(args) -> int:
    try:
        tree = tree_from_json(io.read_text(args.tree))
    except OSError as e:
        raise CliError(f"cannot read {args.tree}: {e.strerror or e}") from None
    sys.stdout.write(export_tree(tree, args.format))
    return 0


def cmd_eval(args) -> int:
    try:
        pred = io.load_assignments(args.assignments)
        truth = io.load_labels(args.labels)
    except OSError as e:
        raise CliError(f"cannot read input: {e.strerror or e}") from None
    text = json.dumps(evaluate(pred, truth), indent=2) + "\n"
    if args.out_metrics:
        _write(args.out_metrics, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_synth(args) -> int:
    rows, labels, _ = planted_sequences(args.k, args.per_cluster, args.alphabet_size,
                                        args.noise_len, args.seed, args.overlap)
    _write(args.out, "".join(" ".join(r) + "\n" for r in rows))
    _write(args.out_labels or f"{args.out}.labels", "".join(f"{x}\n" for x in labels))
    return 0


COMMANDS = {"cluster": cmd_cluster, "explain": cmd_explain, "eval": cmd_eval, "synth": cmd_synth}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args)
    except CliError as e:
        print(f"isct {args.command}: {e}", file=sys.stderr)
    except (ValueError, InfeasibleKError, TreeFormatError) as e:
        print(f"isct {args.command}: {e}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
