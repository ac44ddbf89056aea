"""Command-line front end: scenario runs, comparisons, benchmark
protocols, and result export (tables plus rendered figures)."""

import argparse
import sys
from dataclasses import replace

from . import __version__
from . import config as cfgmod
from . import export, plots
from .simulator import (TRACKERS, bench_optimizers, comparison_rows,
                        measure_runtime, run_localization_experiment,
                        run_scenario, validate_comparison_configs)

COMPARISON_COLUMNS = ("tracker", "mean_gain", "min_gain", "mean_rate", "mean_ee",
                      "reconstruction_count", "rebuild_count_u", "rebuild_count_v",
                      "coverage_fraction", "angle_rms_error_rad",
                      "gain_gain_vs_this", "rate_gain_vs_this", "ee_gain_vs_this")

BENCH_COLUMNS = ("algorithm", "median_fitness", "median_runtime_s", "evaluations", "seeds")

RUNTIME_COLUMNS = ("tracker", "n_side", "median_s", "iqr_s")


class _Parser(argparse.ArgumentParser):
    # Exit 1 (validation), not argparse's default 2, on bad usage.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_config_args(p, default_preset="default"):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--config", help="scenario config file (TOML, dotted keys)")
    group.add_argument("--preset", choices=sorted(cfgmod.PRESETS),
                       default=None, help=f"built-in scenario (default: {default_preset})")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")


def _load_config(args, default_preset="default"):
    if args.config:
        cfg = cfgmod.parse_config(args.config)
    else:
        cfg = cfgmod.preset_config(args.preset or default_preset)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def _repro_line(cfg, extra=""):
    return (f"config_digest={cfgmod.config_digest(cfg)} seed={cfg.seed} "
            f"version={__version__}{extra}")


def _print_table(rows, columns):
    widths = [max(len(c), max((len(export.fmt(r[c])) for r in rows), default=0))
              for c in columns]
    print("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
    for r in rows:
        print("  ".join(export.fmt(r[c]).ljust(w) for c, w in zip(columns, widths)))


def cmd_run(args) -> int:
    cfg = _load_config(args)
    result = run_scenario(cfg)
    metadata = dict(result.metadata)
    metadata["config_digest"] = cfgmod.config_digest(cfg)
    metadata["version"] = __version__
    files = {"meta.json": export.meta_json(metadata)}
    if args.format == "json":
        files["run.json"] = export.run_json(result.steps, result.summary, metadata)
    else:
        files["steps.csv"] = export.steps_csv(result.steps)
        files["summary.csv"] = export.summary_csv(result.summary)
    if not args.no_figures:
        files.update(plots.run_figures(result.steps, result.metadata["aligned_gain"]))
    export.commit_files(args.out, files)
    print(_repro_line(cfg, f" tracker={cfg.tracker} "
                           f"trajectory_digest={result.metadata['trajectory_digest']}"))
    for name, value in export.summary_values(result.summary).items():
        print(f"{name} = {export.fmt(value)}")
    print(f"wrote {len(files)} file(s) to {args.out}", file=sys.stderr)
    return 0


def cmd_compare(args) -> int:
    cfg = _load_config(args)
    trackers = [t.strip() for t in args.trackers.split(",") if t.strip()]
    for t in trackers:
        if t not in TRACKERS:
            raise ValueError(f"unknown tracker {t!r}; choose from {TRACKERS}")
    if len(trackers) < 2:
        raise ValueError("compare needs at least two trackers")
    cfgs = [replace(cfg, tracker=t) for t in trackers]
    validate_comparison_configs(cfgs)
    results = [run_scenario(c) for c in cfgs]
    rows = comparison_rows(cfgs, results)
    print(_repro_line(cfg, f" trackers={','.join(trackers)}"))
    _print_table(rows, COMPARISON_COLUMNS)
    if args.out:
        files = {
            "comparison.csv": export.table_csv(rows, COMPARISON_COLUMNS
                                               + ("trajectory_digest",)),
            "comparison.png": plots.comparison_figure(
                [(c.tracker, r.steps) for c, r in zip(cfgs, results)],
                results[0].metadata["aligned_gain"]),
            "meta.json": export.meta_json({
                "config_digest": cfgmod.config_digest(cfg),
                "version": __version__, "seed": cfg.seed,
                "trackers": trackers,
                "trajectory_digest": results[0].metadata["trajectory_digest"]}),
        }
        export.commit_files(args.out, files)
        print(f"wrote {len(files)} file(s) to {args.out}", file=sys.stderr)
    return 0


def cmd_bench_optimizers(args) -> int:
    cfg = _load_config(args, default_preset="localize")
    table = bench_optimizers(cfg, n_seeds=args.seeds)
    print(_repro_line(cfg, f" seeds={args.seeds}"))
    _print_table(table, BENCH_COLUMNS)
    if args.out:
        files = {"bench.csv": export.table_csv(table, BENCH_COLUMNS),
                 "bench.png": plots.bench_figure(table)}
        export.commit_files(args.out, files)
        print(f"wrote {len(files)} file(s) to {args.out}", file=sys.stderr)
    return 0


def cmd_runtime_sweep(args) -> int:
    cfg = _load_config(args, default_preset="localize")
    counts = tuple(int(a) for a in args.antennas.split(","))
    rows = measure_runtime(cfg, repetitions=args.repetitions, antenna_counts=counts)
    print(_repro_line(cfg, f" antennas={args.antennas}"))
    dict_rows = [{"tracker": r.tracker, "n_side": r.n_side,
                  "median_s": r.median_s, "iqr_s": r.iqr_s} for r in rows]
    _print_table(dict_rows, RUNTIME_COLUMNS)
    if args.out:
        files = {"runtime.csv": export.table_csv(dict_rows, RUNTIME_COLUMNS),
                 "runtime.png": plots.runtime_figure(rows)}
        export.commit_files(args.out, files)
        print(f"wrote {len(files)} file(s) to {args.out}", file=sys.stderr)
    return 0


def cmd_localize(args) -> int:
    cfg = _load_config(args, default_preset="localize")
    records = run_localization_experiment(
        cfg, patterns=tuple(args.patterns.split(",")), epochs=args.epochs,
        shake_radius=args.shake)
    n_anchors = len(cfg.a_uav_positions)
    columns = (("pattern", "epoch", "t", "true_x", "true_y", "est_x", "est_y",
                "error_m", "fitness")
               + tuple(f"rel_err_{k}" for k in range(n_anchors)))
    rows = []
    for r in records:
        row = {"pattern": r.pattern, "epoch": r.epoch, "t": r.time,
               "true_x": r.true_position[0], "true_y": r.true_position[1],
               "est_x": r.estimated_position[0], "est_y": r.estimated_position[1],
               "error_m": r.error_m, "fitness": r.fitness}
        for k, e in enumerate(r.angle_rel_errors):
            row[f"rel_err_{k}"] = e
        rows.append(row)
    errors = sorted(r.error_m for r in records)
    frac_ok = sum(1 for e in errors if e < 0.5) / len(errors)
    print(_repro_line(cfg, f" epochs={args.epochs} shake={args.shake}"))
    print(f"epochs = {len(records)}")
    print(f"fraction_below_0.5m = {export.fmt(frac_ok)}")
    print(f"median_error_m = {export.fmt(errors[len(errors) // 2])}")
    print(f"max_error_m = {export.fmt(errors[-1])}")
    if args.out:
        files = {"localize.csv": export.table_csv(rows, columns),
                 "localize.png": plots.localization_figure(records)}
        export.commit_files(args.out, files)
        print(f"wrote {len(files)} file(s) to {args.out}", file=sys.stderr)
    return 0


def cmd_emit_defaults(args) -> int:
    print(cfgmod.emit_defaults(), end="")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="beamtrack",
                     description="Deterministic UAV beam-tracking simulator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[], help="run one scenario and export it")
    _add_config_args(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("compare", help="run several trackers on one trajectory")
    _add_config_args(p)
    p.add_argument("--trackers", default="bab-ar,fixed,codebook,beamopt",
                   help="comma-separated tracker list")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("bench-optimizers",
                       help="compare GDCSA/CSA/PSO on the localization objective")
    _add_config_args(p, default_preset="localize")
    p.add_argument("--seeds", type=int, default=21)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench_optimizers)

    p = sub.add_parser("runtime-sweep", help="per-cycle runtime vs antenna count")
    _add_config_args(p, default_preset="localize")
    p.add_argument("--antennas", default="8,16,32",
                   help="comma-separated square-array side lengths")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_runtime_sweep)

    p = sub.add_parser("localize", help="repeated moving-platform localization")
    _add_config_args(p, default_preset="localize")
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--shake", type=float, default=None,
                   help="shake radius in metres (default: config value)")
    p.add_argument("--patterns", default="ctrv,ctra,random")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_localize)

    p = sub.add_parser("emit-defaults", help="print the default config")
    p.set_defaults(fn=cmd_emit_defaults)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"beamtrack: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"beamtrack: runtime error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    raise SystemExit(main())
