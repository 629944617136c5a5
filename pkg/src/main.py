import argparse
import logging
import os
import sys
from pathlib import Path

from src.config import DEFAULT_CONFIG_FILE, Config
from src.harness.experiment import (
    COMPARISON_KS,
    PUBLISHED_COMPARISON,
    PUBLISHED_GLOBAL_COMPARISON,
    ExperimentConfig,
    default_methods,
    parse_method,
    parse_queries,
    reproduce_comparison_table,
    run_experiment,
    timing_benchmark,
)
from src.harness.output import (
    emit_results,
    read_dataset_csv,
    write_bench_csv,
    write_comparison_csv,
)
from src.rbf import save_model
from src.utils.errors import OutputError

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler(sys.stdout)]
)
logger = logging.getLogger("smooth")

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_ALL_FAILED = 2


def update_log_level():
    # Update logging level from config.
    level_name = Config.LOG_LEVEL.upper()
    level = getattr(logging, level_name, logging.INFO)
    logging.getLogger().setLevel(level)
    logger.setLevel(level)


def _fmt(value, spec=".4f"):
    return "N/A" if value is None else format(value, spec)


def log_table(headers, col_widths, rows):
    # Logs a structured ASCII table.
    header_line = " | ".join(
        h.ljust(w) for h, w in zip(headers, col_widths)
    )
    logger.info("\n" + "=" * len(header_line))
    logger.info(header_line)
    logger.info("-" * len(header_line))
    for row in rows:
        logger.info(" | ".join(
            str(val)[:width].ljust(width) for val, width in zip(row, col_widths)
        ))
    logger.info("=" * len(header_line) + "\n")


def log_summary_table(report):
    # Logs per-method errors and timings of one experiment.
    if not report.errors:
        return
    rows = [
        [
            errors.method,
            errors.param,
            _fmt(errors.curvature),
            _fmt(errors.distance),
            _fmt(report.timings.get(errors.method), ".1f"),
        ]
        for errors in report.errors
    ]
    log_table(["Method", "K/M", "E_c", "E_d", "ms"], [40, 6, 14, 12, 10], rows)


def log_comparison_table(seed, rows):
    # Reproduced errors next to the published magnitudes for the same K.
    table = []
    for row in rows:
        published = PUBLISHED_COMPARISON.get(row.k)
        table.append([
            row.k,
            _fmt(row.lowess_curvature), _fmt(row.rbf_curvature),
            _fmt(row.lowess_distance), _fmt(row.rbf_distance),
            "N/A" if published is None else " / ".join(f"{v:g}" for v in published),
        ])
    logger.info(f"LOWESS against simplified RBF, seed {seed}:")
    log_table(
        ["K", "E_c LOWESS", "E_c RBF", "E_d LOWESS", "E_d RBF", "Published"],
        [6, 12, 12, 12, 12, 34],
        table,
    )


def log_bench_table(rows):
    table = [[row.method, row.n, row.param, row.r, _fmt(row.median_ms, ".2f")] for row in rows]
    log_table(["Method", "N", "K/M", "R", "median ms"], [40, 7, 6, 7, 10], table)


def parse_interval(text):
    # "lo,hi" -> (lo, hi).
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"Interval '{text}' must look like lo,hi.")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"Interval '{text}' must hold two numbers.")


def parse_int_list(text):
    try:
        return [int(p) for p in str(text).split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' must be a comma separated list of integers.")


def build_parser():
    parser = argparse.ArgumentParser(
        prog='smooth',
        description='LOWESS and RBF smoothing of scattered data, with error metrics and benchmarks'
    )
    parser.add_argument(
        '--config', type=str, help='Path to JSON configuration file'
    )
    parser.add_argument(
        '--log-level', type=str, help='DEBUG, INFO, WARNING, ERROR or CRITICAL'
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    run = subparsers.add_parser('run', help='Smooth a dataset and score every method')
    source = run.add_mutually_exclusive_group()
    source.add_argument('--input', type=str, help='CSV with columns x[,y[,z]],value')
    source.add_argument('--synthetic', type=int, metavar='N', help='Sample the test function N times')
    run.add_argument(
        '--reference', type=str,
        help='Noiseless CSV for E_d when using --input'
    )
    run.add_argument('--interval', type=parse_interval, help='Sampling interval lo,hi')
    run.add_argument('--noise', type=float, help='Uniform noise amplitude')
    run.add_argument('--seed', type=int, help='Noise seed')
    run.add_argument(
        '--method', action='append', default=[],
        help='lowess:d=1,k=100 | rbf-local:poly=const,k=100 | '
             'rbf-local:poly=none,k=100 | rbf-global:m=20,d=1,overlap=2.0 (repeatable)'
    )
    run.add_argument('--queries', type=str, default='at-samples', help='at-samples or grid:R')
    run.add_argument(
        '--index-space', action='store_true',
        help='Compute E_c without dividing by the sample spacing'
    )
    run.add_argument('--out-curves', type=str, help='Smoothed curves CSV')
    run.add_argument('--out-table', type=str, help='Error and timing table CSV')
    run.add_argument('--out-plot', type=str, help='SVG chart (1D only)')
    run.add_argument('--out-model', type=str, help='Fitted global RBF model file')
    run.add_argument('--bench', action='store_true', help='Run the timing benchmark')
    run.add_argument('--repeats', type=int, help='Benchmark repeats (>= 3)')
    run.add_argument('--out-bench', type=str, help='Benchmark table CSV')

    table = subparsers.add_parser(
        'table', help='Compare LOWESS and the simplified RBF over several K'
    )
    table.add_argument('--seeds', type=parse_int_list, help='Comma separated noise seeds')
    table.add_argument(
        '--ks', type=parse_int_list, default=list(COMPARISON_KS),
        help='Comma separated neighbor counts'
    )
    table.add_argument(
        '--rbf-variant', type=str, default='const',
        help='Simplified RBF tail: const or none'
    )
    table.add_argument(
        '--index-space', action='store_true',
        help='Compute E_c without dividing by the sample spacing'
    )
    table.add_argument('--out-table', type=str, help='Comparison CSV')
    return parser


def parse_args(argv=None):
    # Parse command line arguments.
    return build_parser().parse_args(argv)


def load_configuration(args):
    # Config file, then CLI overrides, then validation. Returns False on error.
    config_path = args.config or Config.config_file()
    explicit = bool(args.config) or config_path != DEFAULT_CONFIG_FILE
    if os.path.exists(config_path):
        msg = (
            "The application is loading your custom configuration "
            f"settings from {config_path}."
        )
        logger.info(msg)
        if not Config.reload_from_file(config_path):
            return False
    elif explicit:
        logger.critical(f"Configuration file {config_path} was not found.")
        return False

    if args.log_level:
        Config.LOG_LEVEL = args.log_level
    if getattr(args, 'synthetic', None) is not None:
        Config.SAMPLE_COUNT = args.synthetic
    if getattr(args, 'interval', None) is not None:
        Config.INTERVAL_LOW, Config.INTERVAL_HIGH = args.interval
    if getattr(args, 'noise', None) is not None:
        Config.NOISE_AMPLITUDE = args.noise
    if getattr(args, 'seed', None) is not None:
        Config.SEED = args.seed
    if getattr(args, 'repeats', None) is not None:
        Config.BENCH_REPEATS = args.repeats

    try:
        Config.validate()
    except ValueError as e:
        logger.critical(f"Configuration Invalid: {e}")
        return False
    update_log_level()
    return True


def model_paths(path, count):
    # One path per fitted model; numbered when there are several.
    path = Path(path)
    if count == 1:
        return [path]
    return [path.with_name(f"{path.stem}-{i}{path.suffix}") for i in range(count)]


def cmd_run(args):
    # Smooth, score, write results and optionally benchmark.
    try:
        methods = tuple(parse_method(m) for m in args.method) or default_methods()
        queries = parse_queries(args.queries)
        dataset = reference = None
        if args.input:
            dataset = read_dataset_csv(args.input)
            if args.reference:
                reference = read_dataset_csv(args.reference)
            Config.SAMPLE_COUNT = len(dataset)
        elif args.reference:
            raise ValueError("--reference only applies together with --input")
        config = ExperimentConfig.from_config(methods, queries, args.index_space)
    except (OutputError, ValueError) as e:
        logger.critical(f"Configuration Invalid: {e}")
        return EXIT_CONFIG_ERROR

    if args.input:
        source = f"the {len(dataset)} samples from {args.input}"
    else:
        source = f"{config.sample_count} noisy samples of the test function"
    msg = (
        f"Running {len(methods)} method(s) on {source} "
        f"with queries {queries.label}."
    )
    logger.info(msg)
    report = run_experiment(config, dataset, reference)
    log_summary_table(report)
    if report.models:
        logger.info("Published magnitudes for the global comparison (index-space E_c):")
        log_table(
            ["Method", "E_c", "E_d"], [12, 10, 10],
            [[kind, *values] for kind, values in PUBLISHED_GLOBAL_COMPARISON.items()],
        )

    try:
        emit_results(report, args.out_curves, args.out_table, args.out_plot)
        if args.out_model:
            if not report.models:
                logger.warning("No global RBF model was fitted; --out-model ignored.")
            for path, model in zip(
                model_paths(args.out_model, len(report.models)), report.models.values()
            ):
                save_model(model, path)
                logger.info(f"Wrote model to {path}")
        if args.bench:
            rows = timing_benchmark(config, Config.BENCH_REPEATS, report.samples)
            log_bench_table(rows)
            if args.out_bench:
                write_bench_csv(rows, args.out_bench)
    except OutputError as e:
        logger.critical(str(e))
        return EXIT_CONFIG_ERROR

    if report.all_failed:
        return EXIT_ALL_FAILED
    return EXIT_OK


def cmd_table(args):
    # Reproduce the LOWESS against simplified RBF comparison.
    seeds = args.seeds or [Config.SEED]
    paths = [None] * len(seeds)
    if args.out_table:
        paths = model_paths(args.out_table, len(seeds))
    produced = False
    for seed, path in zip(seeds, paths):
        try:
            rows = reproduce_comparison_table(
                seed=seed,
                ks=args.ks,
                rbf_variant=args.rbf_variant,
                sample_count=Config.SAMPLE_COUNT,
                noise_amplitude=Config.NOISE_AMPLITUDE,
                lowess_degree=Config.LOWESS_DEGREE,
                index_space=args.index_space,
            )
        except ValueError as e:
            logger.critical(f"Configuration Invalid: {e}")
            return EXIT_CONFIG_ERROR
        log_comparison_table(seed, rows)
        produced = produced or bool(rows)
        if path is not None:
            try:
                write_comparison_csv(rows, path)
            except OutputError as e:
                logger.critical(str(e))
                return EXIT_CONFIG_ERROR
    return EXIT_OK if produced else EXIT_ALL_FAILED


COMMANDS = {
    'run': cmd_run,
    'table': cmd_table,
}


def main(argv=None):
    # Main entry point; returns the process exit code.
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_CONFIG_ERROR
    if not load_configuration(args):
        return EXIT_CONFIG_ERROR
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
