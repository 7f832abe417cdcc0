"""Render convergence and pressure figures from harness CSV files.

The renderers read only the documented CSV columns, never touch the
process that produced them, and use fixed styles so the same input
yields the same figure.  Non-finite estimate rows (support violations
show up as "inf") are dropped and counted, not interpolated over.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "zmlab-plots"  # reproducible ids

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import NothingToPlot, SchemaError  # noqa: E402

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
           "#e377c2", "#7f7f7f"]


def _read_rows(path, required: list[str]):
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        for col in required:
            if col not in names:
                raise SchemaError(path.name, col)
        return list(reader)


def _save(fig, out):
    out = Path(out)
    kwargs = {}
    if out.suffix.lower() == ".svg":
        kwargs["metadata"] = {"Date": None}  # keep reruns byte-stable
    fig.savefig(out, **kwargs)
    plt.close(fig)
    return out


@dataclass
class ConvergenceReport:
    out_path: Path
    curve_count: int
    dropped_inf: int
    reference: float | None
    smb_points: int


def render_convergence(estimates_csv, out, summary_csv=None, smb_csv=None,
                       href: float | None = None) -> ConvergenceReport:
    """Median and interquartile band per estimator against N (log axis).

    The optional smb series is overlaid on the same axes and an optional
    horizontal line marks the reference rate.  When a summary CSV is
    given and no explicit reference is, the line is read from its
    reference_nats column.
    """
    rows = _read_rows(estimates_csv, ["estimator", "N", "trial",
                                      "value_nats"])
    groups: dict[str, dict[int, list[float]]] = {}
    dropped = 0
    for row in rows:
        value = float(row["value_nats"])
        if not math.isfinite(value):
            dropped += 1
            continue
        groups.setdefault(row["estimator"], {}) \
              .setdefault(int(row["N"]), []).append(value)
    print(f"dropped {dropped} non-finite estimate rows")
    if not groups:
        raise NothingToPlot(f"{Path(estimates_csv).name}: no finite "
                            "estimate rows to draw")

    if href is None and summary_csv is not None:
        for row in _read_rows(summary_csv, ["estimator", "N",
                                            "reference_nats"]):
            if row["reference_nats"]:
                href = float(row["reference_nats"])
                break

    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=120)
    for i, name in enumerate(sorted(groups)):
        ns = sorted(groups[name])
        data = [groups[name][n] for n in ns]
        med = [float(np.median(v)) for v in data]
        q1 = [float(np.percentile(v, 25)) for v in data]
        q3 = [float(np.percentile(v, 75)) for v in data]
        color = _COLORS[i % len(_COLORS)]
        ax.plot(ns, med, color=color, marker="o", markersize=3, label=name)
        ax.fill_between(ns, q1, q3, color=color, alpha=0.18, linewidth=0)

    smb_points = 0
    if smb_csv is not None:
        series: dict[int, list[float]] = {}
        for row in _read_rows(smb_csv, ["trial", "n", "value"]):
            value = float(row["value"])
            if math.isfinite(value):
                series.setdefault(int(row["n"]), []).append(value)
                smb_points += 1
        if series:
            ns = sorted(series)
            ax.plot(ns, [float(np.mean(series[n])) for n in ns],
                    color="#333333", linestyle="--", marker="s",
                    markersize=3, label="smb mean")

    if href is not None:
        ax.axhline(href, color="#000000", linestyle=":", linewidth=1,
                   label="reference")

    ax.set_xscale("log", base=2)
    ax.set_xlabel("N (symbols)")
    ax.set_ylabel("estimate (nats)")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, which="both", alpha=0.25)
    fig.tight_layout()
    out_path = _save(fig, out)
    return ConvergenceReport(out_path, len(groups), dropped, href,
                             smb_points)


@dataclass
class PressureReport:
    out_path: Path
    depths: list[int]
    convex: dict[int, bool]
    zero_marked: bool


def render_pressure(pressure_csv, out, chord: bool = False
                    ) -> PressureReport:
    """One q_n(alpha)/n curve per depth, with a convexity re-check.

    A depth whose tabulated curve has a negative second difference gets
    a printed warning; the data is drawn either way.  With chord=True a
    line through the origin at the left-slope proxy is overlaid.
    """
    rows = _read_rows(pressure_csv, ["n", "alpha", "q_over_n"])
    by_depth: dict[int, list[tuple[float, float]]] = {}
    for row in rows:
        by_depth.setdefault(int(row["n"]), []).append(
            (float(row["alpha"]), float(row["q_over_n"])))
    if not by_depth:
        raise NothingToPlot(f"{Path(pressure_csv).name}: no pressure rows")

    fig, ax = plt.subplots(figsize=(6.0, 4.5), dpi=120)
    convex = {}
    zero_marked = False
    for i, depth in enumerate(sorted(by_depth)):
        pts = sorted(by_depth[depth])
        alphas = np.array([p[0] for p in pts])
        vals = np.array([p[1] for p in pts])
        left = np.diff(vals[:-1]) / np.diff(alphas[:-1])
        right = np.diff(vals[1:]) / np.diff(alphas[1:])
        convex[depth] = bool(np.all(right - left >= -1e-9))
        if not convex[depth]:
            print(f"warning: depth {depth} curve is not convex "
                  "within 1e-9")
        color = _COLORS[i % len(_COLORS)]
        ax.plot(alphas, vals, color=color, marker=".", markersize=4,
                label=f"n = {depth}")
        at_zero = np.isclose(alphas, 0.0, atol=1e-12)
        if at_zero.any():
            ax.plot(0.0, vals[at_zero][0], color=color, marker="o",
                    markersize=7, fillstyle="none")
            zero_marked = True
        if chord:
            neg = alphas < 0
            if neg.any() and at_zero.any():
                a = alphas[neg][-1]
                slope = (vals[at_zero][0] - vals[neg][-1]) / (0.0 - a)
                ax.plot(alphas, slope * alphas, color=color, linewidth=0.8,
                        linestyle="--", alpha=0.6)

    ax.axhline(0.0, color="#bbbbbb", linewidth=0.8)
    ax.axvline(0.0, color="#bbbbbb", linewidth=0.8)
    ax.set_xlabel("alpha")
    ax.set_ylabel("q_n(alpha) / n")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    out_path = _save(fig, out)
    return PressureReport(out_path, sorted(by_depth), convex, zero_marked)
