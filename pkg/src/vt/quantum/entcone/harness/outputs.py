#!/usr/bin/env python3
# coding=utf-8

"""
Writing a run to disk: the sample CSV, the YAML report, a JSON summary and SVG plots.
"""

from __future__ import annotations

import json
import logging
from abc import abstractmethod
from collections.abc import Iterable
from enum import StrEnum
from pathlib import Path
from typing import Protocol, final, override

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.harness.runner import RunRecord, save_record
from vt.quantum.entcone.lightcone import CSV_COLUMNS, samples_frame

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


class OutputFormat(StrEnum):
    CSV = "csv"
    YAML = "yaml"
    JSON = "json"
    SVG = "svg"


ALL_FORMATS = tuple(OutputFormat)


# region output directory
class OutputDirOp(Protocol):
    """
    Anything that knows where its outputs go, e.g. a ``ScenarioConfig``.
    """

    @property
    @abstractmethod
    def output_dir(self) -> Path:
        """
        :return: directory receiving the files of this operation.
        """
        ...  # pragma: no cover


class FixedOutputDirOp(OutputDirOp):
    def __init__(self, output_dir: Path):
        self._output_dir = output_dir

    @override
    @property
    def output_dir(self) -> Path:
        return self._output_dir


@final
class OutputDirOps:
    """
    A factory-like class for ``OutputDirOp``.
    """

    @staticmethod
    def strictly_one_required(output_dir: Path | None = None, output_dir_op: OutputDirOp | None = None) -> Path:
        """
        Resolve the output directory from exactly one of its two sources.

        >>> assert OutputDirOps.strictly_one_required(Path("out")) == Path("out")
        >>> assert OutputDirOps.strictly_one_required(output_dir_op=OutputDirOps.from_path(Path("runs"))) == Path("runs")
        >>> OutputDirOps.strictly_one_required()
        Traceback (most recent call last):
        ValueError: Either output_dir or output_dir_op is required.
        >>> OutputDirOps.strictly_one_required(Path("a"), OutputDirOps.from_path(Path("b")))
        Traceback (most recent call last):
        ValueError: output_dir and output_dir_op are not allowed together.

        :raises ValueError: when both or neither are supplied.
        """
        if output_dir and output_dir_op:
            raise ValueError("output_dir and output_dir_op are not allowed together.")
        if output_dir:
            return output_dir
        if output_dir_op:
            return output_dir_op.output_dir
        raise ValueError("Either output_dir or output_dir_op is required.")

    @staticmethod
    def from_path(output_dir: Path) -> FixedOutputDirOp:
        return FixedOutputDirOp(output_dir)


# endregion


def _prepare(directory: Path) -> Path:
    try:
        directory.mkdir(parents=True, exist_ok=True)
        probe = directory / ".write-test"
        probe.touch()
        probe.unlink()
    except OSError as err:
        raise DomainError(f"output directory {directory} is not writable: {err}") from err
    return directory


def write_csv(record: RunRecord, path: Path) -> Path:
    """
    Sample table with the fixed columns and 17 significant digits, so equal runs give equal bytes.
    """
    frame = samples_frame(record.samples)[list(CSV_COLUMNS)]
    if frame.empty:
        logger.warning("sample table is empty; writing headers only")
        record.notes.append("empty sample table: headers-only CSV, no plots")
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return path


def summary(record: RunRecord) -> dict[str, object]:
    """
    Machine-readable pass/fail with every fitted constant.
    """
    return {
        "config_hash": record.config_hash,
        "passed": record.passed,
        "verdicts": {name: bool(v.get("passed", True)) for name, v in record.verdicts.items()},
        "fits": {
            name: {k: fit[k] for k in ("mu_fit", "c_fit", "log_c_fit", "rms_log_residual", "correlation_length")}
            for name, fit in record.fits.items()
            if "error" not in fit
        },
        "velocity": record.velocity,
        "alpha4": record.build_report.get("alpha4"),
        "alpha5": record.build_report.get("alpha5"),
        "samples": len(record.samples),
        "wall_clock": record.wall_clock,
    }


def _plot_metadata(record: RunRecord, extra: dict[str, object]) -> dict[str, str | None]:
    data = {"config_hash": record.config_hash, **extra}
    return {"Description": json.dumps(data, sort_keys=True, default=float), "Date": None, "Creator": "entcone"}


def plot_heatmap(record: RunRecord, path: Path) -> Path | None:
    """
    ``log10`` residual over ``(d, t)`` (maximum over probes at equal ``d``) with the fitted cone ``d = c t``.

    :return: ``None`` when the grid has a single time, where a heatmap carries no information.
    """
    frame = samples_frame(record.samples)
    if frame["t"].nunique() < 2:
        logger.warning("single time value; heatmap skipped")
        record.notes.append("heatmap skipped: single time value")
        return None
    table = frame.pivot_table(index="d", columns="t", values="residual", aggfunc="max")
    floor = record.scenario.fit.noise_floor
    values = np.log10(np.maximum(table.to_numpy(dtype=float), floor))
    fig = Figure(figsize=(7, 4.5))
    ax = fig.add_subplot()
    mesh = ax.pcolormesh(table.columns.to_numpy(), table.index.to_numpy(), values, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="log10 residual")
    fit = record.fits.get("residual", {})
    meta: dict[str, object] = {}
    if "c_fit" in fit:
        t = table.columns.to_numpy(dtype=float)
        ax.plot(t, fit["c_fit"] * t, color="white", linestyle="--", label=f"d = {fit['c_fit']:.3g} t")
        ax.set_ylim(table.index.min(), table.index.max())
        ax.legend(loc="lower right")
        meta = {"c_fit": fit["c_fit"], "mu_fit": fit["mu_fit"]}
    ax.set_xlabel("t")
    ax.set_ylabel("d(X, Y)")
    ax.set_title(record.config.get("name", "scenario"))
    with matplotlib.rc_context({"svg.hashsalt": record.config_hash}):
        fig.savefig(path, format="svg", metadata=_plot_metadata(record, meta))
    return path


def plot_arrivals(record: RunRecord, path: Path) -> Path:
    """
    Residual and leakage against time, one curve per distance.
    """
    frame = samples_frame(record.samples)
    fig = Figure(figsize=(9, 4))
    axes = fig.subplots(1, 2, sharex=True)
    for ax, column in zip(axes, ("residual", "leakage")):
        curves = frame.groupby(["d", "t"])[column].max().unstack("d")
        for d in curves.columns:
            ax.semilogy(curves.index, np.maximum(curves[d], 1e-18), label=f"d={d:g}")
        ax.set_xlabel("t")
        ax.set_title(column)
    axes[0].legend(fontsize="small", ncols=2)
    with matplotlib.rc_context({"svg.hashsalt": record.config_hash}):
        fig.savefig(path, format="svg", metadata=_plot_metadata(record, {"distances": sorted(frame["d"].unique())}))
    return path


def emit_outputs(
    record: RunRecord,
    formats: Iterable[OutputFormat | str] = ALL_FORMATS,
    output_dir: Path | None = None,
    output_dir_op: OutputDirOp | None = None,
) -> list[Path]:
    """
    Write the requested artifacts and return their paths.

    ``output_dir_op`` defaults to the scenario of the record when neither argument is given.

    :raises DomainError: when the output directory cannot be written.
    """
    if output_dir is None and output_dir_op is None:
        output_dir_op = record.scenario
    directory = _prepare(OutputDirOps.strictly_one_required(output_dir, output_dir_op))
    wanted = {OutputFormat(f) for f in formats}
    written: list[Path] = []
    empty = not record.samples
    if OutputFormat.CSV in wanted:
        written.append(write_csv(record, directory / "samples.csv"))
    if OutputFormat.SVG in wanted and not empty:
        heatmap = plot_heatmap(record, directory / "heatmap.svg")
        if heatmap is not None:
            written.append(heatmap)
        written.append(plot_arrivals(record, directory / "arrivals.svg"))
    elif OutputFormat.SVG in wanted:
        logger.warning("no samples; plots skipped")
    if OutputFormat.YAML in wanted:
        written.append(save_record(record, directory / "report.yaml"))
    if OutputFormat.JSON in wanted:
        target = directory / "summary.json"
        target.write_text(json.dumps(summary(record), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(target)
    logger.info("wrote %s", ", ".join(p.name for p in written))
    return written