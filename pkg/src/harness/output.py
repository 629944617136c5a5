"""
Result files: smoothed-curve CSV, error/timing table CSV, comparison and
benchmark CSVs, the optional SVG chart, and the input dataset reader.

Every number is written with 17 significant digits so a re-read curve
equals the in-memory values bit for bit.
"""
import logging
from pathlib import Path
from typing import Iterable

import numpy as np
import pandas as pd
from matplotlib.figure import Figure

from src.geometry import Dataset
from src.harness.experiment import (
    BenchmarkRow,
    ComparisonRow,
    ExperimentReport,
)
from src.utils.errors import OutputError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
AXIS_NAMES = ("x", "y", "z")
TABLE_COLUMNS = ["method", "param", "E_c", "E_d", "ms"]
COMPARISON_COLUMNS = ["k", "E_c_lowess", "E_c_rbf", "E_d_lowess", "E_d_rbf"]
BENCH_COLUMNS = ["method", "N", "param", "R", "median_ms"]


def axis_columns(dimension):
    if dimension > len(AXIS_NAMES):
        return [f"x{i}" for i in range(dimension)]
    return list(AXIS_NAMES[:dimension])


def _write_frame(frame: pd.DataFrame, path):
    path = Path(path)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        raise OutputError(path, e) from e
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def _read_frame(path):
    path = Path(path)
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except OSError as e:
        raise OutputError(path, e) from e


def curves_frame(report: ExperimentReport) -> pd.DataFrame:
    # Long layout: one row per (method, query point).
    columns = axis_columns(report.queries.shape[1])
    frames = []
    for label, values in report.curves.items():
        frame = pd.DataFrame(report.queries, columns=columns)
        frame.insert(0, "method", label)
        frame["value"] = values
        frames.append(frame)
    if not frames:
        return pd.DataFrame(columns=["method", *columns, "value"])
    return pd.concat(frames, ignore_index=True)


def table_frame(report: ExperimentReport) -> pd.DataFrame:
    rows = [
        {
            "method": errors.method,
            "param": errors.param,
            "E_c": errors.curvature,
            "E_d": errors.distance,
            "ms": report.timings.get(errors.method),
        }
        for errors in report.errors
    ]
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def comparison_frame(rows: Iterable[ComparisonRow]) -> pd.DataFrame:
    records = [
        [row.k, row.lowess_curvature, row.rbf_curvature,
         row.lowess_distance, row.rbf_distance]
        for row in rows
    ]
    return pd.DataFrame(records, columns=COMPARISON_COLUMNS)


def bench_frame(rows: Iterable[BenchmarkRow]) -> pd.DataFrame:
    records = [[row.method, row.n, row.param, row.r, row.median_ms] for row in rows]
    return pd.DataFrame(records, columns=BENCH_COLUMNS)


def write_curves_csv(report: ExperimentReport, path):
    return _write_frame(curves_frame(report), path)


def write_table_csv(report: ExperimentReport, path):
    return _write_frame(table_frame(report), path)


def write_comparison_csv(rows: Iterable[ComparisonRow], path):
    return _write_frame(comparison_frame(rows), path)


def write_bench_csv(rows: Iterable[BenchmarkRow], path):
    return _write_frame(bench_frame(rows), path)


def read_curves_csv(path):
    # {method label: (positions (R, D), values (R,))}, in file order.
    frame = _read_frame(path)
    coords = [c for c in frame.columns if c not in ("method", "value")]
    curves = {}
    for label, group in frame.groupby("method", sort=False):
        curves[label] = (
            group[coords].to_numpy(dtype=float),
            group["value"].to_numpy(dtype=float),
        )
    return curves


def read_dataset_csv(path) -> Dataset:
    # Header row, columns x[,y[,z]],value.
    frame = _read_frame(path)
    if "value" not in frame.columns or frame.shape[1] < 2:
        raise ValueError(f"{path}: expected columns x[,y[,z]],value")
    coords = [c for c in frame.columns if c != "value"]
    if frame.shape[0] == 0:
        raise ValueError(f"{path}: no data rows")
    try:
        positions = frame[coords].to_numpy(dtype=float)
        values = frame["value"].to_numpy(dtype=float)
    except ValueError as e:
        raise ValueError(f"{path}: non-numeric data ({e})")
    logger.info(
        f"Read {positions.shape[0]} samples in {positions.shape[1]}D from {path}"
    )
    return Dataset(positions, values)


def write_plot_svg(report: ExperimentReport, path):
    # Noiseless reference, noisy samples and every method's curve (1D only).
    path = Path(path)
    if report.samples.dimension != 1:
        logger.warning(f"Skipping plot {path}: charts are drawn for 1D data only.")
        return None
    figure = Figure(figsize=(10, 6))
    ax = figure.add_subplot()
    ax.scatter(
        report.samples.positions[:, 0], report.samples.values,
        s=4, color="lightgray", label="noisy samples",
    )
    if report.reference is not None:
        ax.plot(
            report.reference.positions[:, 0], report.reference.values,
            color="black", linewidth=1.0, label="noiseless",
        )
    order = np.argsort(report.queries[:, 0], kind="stable")
    for label, values in report.curves.items():
        ax.plot(report.queries[order, 0], values[order], linewidth=1.2, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.legend(loc="best", fontsize="small")
    try:
        figure.savefig(path, format="svg")
    except OSError as e:
        raise OutputError(path, e) from e
    logger.info(f"Wrote chart to {path}")
    return path


def emit_results(
    report: ExperimentReport,
    curves_path=None,
    table_path=None,
    plot_path=None
) -> dict:
    # Write whichever outputs were requested; returns {kind: path}.
    written = {}
    if curves_path is not None:
        written["curves"] = write_curves_csv(report, curves_path)
    if table_path is not None:
        written["table"] = write_table_csv(report, table_path)
    if plot_path is not None:
        plot = write_plot_svg(report, plot_path)
        if plot is not None:
            written["plot"] = plot
    return written

