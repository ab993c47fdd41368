"""Command-line entry point: ``cibench run | rank-augmenters | rank-models |
datasets list | report``."""

import argparse
import json
import logging
import os
import sys
import time

from ..datasets import catalog, imbalance_ratio
from ..exceptions import CIBenchError
from .config import load_config
from .ranking import rank_augmenters, rank_models
from .report import (emit_csv, emit_heatmap, emit_markdown, emit_ranking,
                     read_csv)
from .runner import run_grid

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2

DEFAULT_RESULTS = os.path.join("results", "results.csv")

log = logging.getLogger("cibench")


def _cmd_run(args):
    config = load_config(args.config)
    patterns = [p for p in (args.datasets or "").split(",") if p.strip()]
    config = config.override(n_runs=args.runs, datasets=patterns,
                             skip_ctgan=args.skip_ctgan, out_dir=args.out,
                             n_jobs=args.jobs)
    cells = config.cells()
    log.info("running %d cells x %d runs into %s", len(cells), config.n_runs,
             config.out_dir)
    done = [0]
    start = time.time()

    def progress(s):
        done[0] += 1
        acc = s.stats.get("accuracy")
        status = "FAILED" if not s.ok else f"acc {acc.mean:.3f}"
        log.info("[%d/%d] %s / %s / %s: %s (%.0fs)", done[0], len(cells),
                 s.dataset, s.augmenter, s.model, status, time.time() - start)

    table = run_grid(config, record_dir=os.path.join(config.out_dir, "runs"),
                     progress=progress)
    out = config.out_dir
    emit_csv(table, os.path.join(out, "results.csv"))
    emit_markdown(table, os.path.join(out, "results.md"))
    try:
        with open(os.path.join(out, "provenance.json"), "w",
                  encoding="utf8") as fh:
            json.dump({**table.provenance, "config": config.canonical()}, fh,
                      indent=1)
    except OSError as exc:
        raise CIBenchError(f"cannot write provenance: {exc.strerror}") from None
    print(f"wrote {len(table)} cells to {os.path.join(out, 'results.csv')}")
    if table.failed:
        for s in table.failed:
            print(f"cell failed: {s.cell_error}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _print_ranking(entries, title):
    print(title)
    width = max(len(e.label) for e in entries)
    for i, e in enumerate(entries, start=1):
        print(f"{i:>2}. {e.label:<{width}}  {e.mean:8.3f} +/- {e.error:.3f}"
              f"  ({e.n_datasets} datasets)")


def _cmd_rank_augmenters(args):
    table = read_csv(args.input)
    entries = rank_augmenters(table, args.family, args.model, args.metric)
    _print_ranking(entries, f"augmenters on {args.family} with {args.model}, "
                            f"mean {args.metric}")
    if args.out:
        emit_ranking(entries, args.out)
    return EXIT_OK


def _cmd_rank_models(args):
    table = read_csv(args.input)
    entries = rank_models(table, args.family, args.augmenter, args.metric)
    _print_ranking(entries, f"models on {args.family} with augmenter "
                            f"{args.augmenter}, mean {args.metric}")
    if args.out:
        emit_ranking(entries, args.out)
    return EXIT_OK


def _cmd_datasets(args):
    print(f"{'name':<18} {'family':<8} {'rows':>5} {'feat':>4} {'classes':>7} "
          f"{'IR':>7}")
    for r in catalog():
        ds = r()
        ir = f"{imbalance_ratio(ds):.2f}" if ds.is_binary else "-"
        print(f"{r.name:<18} {r.family:<8} {ds.n_samples:>5} "
              f"{ds.n_features:>4} {ds.n_classes:>7} {ir:>7}")
    return EXIT_OK


def _cmd_report(args):
    table = read_csv(args.input)
    if args.heatmap:
        path = args.out or f"heatmap_{args.heatmap}_{args.metric}.svg"
        emit_heatmap(table, args.heatmap, args.metric, path)
        print(f"wrote {path}")
    if args.markdown:
        emit_markdown(table, args.markdown)
        print(f"wrote {args.markdown}")
    if not args.heatmap and not args.markdown:
        raise CIBenchError("report needs --heatmap <dataset> or --markdown <path>")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="cibench",
        description="Benchmark resampling methods and ensemble learners on "
                    "imbalanced datasets.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a (dataset x augmenter x model) grid")
    run.add_argument("--config", help="INI grid file (default: full grid)")
    run.add_argument("--runs", type=int, help="override the number of runs")
    run.add_argument("--datasets", help="comma-separated name patterns")
    run.add_argument("--skip-ctgan", action="store_true",
                     help="leave out the GAN augmenter")
    run.add_argument("--out", help="output directory")
    run.add_argument("--jobs", type=int, help="worker threads")
    run.set_defaults(func=_cmd_run)

    for name, func, fixed, default in (
            ("rank-augmenters", _cmd_rank_augmenters, "--model", "histgbm"),
            ("rank-models", _cmd_rank_models, "--augmenter", "none")):
        r = sub.add_parser(name, help=f"{name.replace('-', ' ')} on a family")
        r.add_argument("--family", required=True,
                       help="dataset-name prefix, e.g. glass")
        r.add_argument("--input", default=DEFAULT_RESULTS,
                       help="results CSV written by 'run'")
        r.add_argument(fixed, default=default, help="the fixed counterpart")
        r.add_argument("--metric", default="f1")
        r.add_argument("--out", help="write bar-chart data as CSV")
        r.set_defaults(func=func)

    ds = sub.add_parser("datasets", help="dataset catalog")
    ds.add_argument("action", choices=["list"])
    ds.set_defaults(func=_cmd_datasets)

    rep = sub.add_parser("report", help="render reports from a results CSV")
    rep.add_argument("--input", default=DEFAULT_RESULTS)
    rep.add_argument("--heatmap", metavar="DATASET")
    rep.add_argument("--metric", default="f1")
    rep.add_argument("--markdown", metavar="PATH")
    rep.add_argument("--out", help="heatmap SVG path")
    rep.set_defaults(func=_cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s",
                        stream=sys.stderr)
    try:
        return args.func(args)
    except CIBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
