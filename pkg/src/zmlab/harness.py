"""Experiment driver: seeded trials, estimator grids, CSV output.

One long reference/target pair is drawn per trial and every horizon N in
the grid is evaluated on its prefixes, sharing a single substring index
per trial.  Rows are sorted by (estimator, N, trial) and floats written
via repr, so reruns of the same config produce byte-identical files no
matter how many worker processes were used.  ZMLAB_THREADS caps the
process count; the default is serial.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, ZmlabError
from .infotheory import NUMERIC, cross_entropy_rate, smb_series
from .matcher import build_index
from .parser import Estimate, EstimatorKind, estimate
from .sources import RngSpec, SourceModel, model_from_dict, sample

DEFAULT_N_GRID = [2 ** k for k in range(10, 18)]
DEFAULT_SMB_GRID = [10, 100, 1000, 10000]
DEFAULT_DIAG_GRID = [2, 4, 6, 8, 10, 12]


@dataclass
class ExperimentConfig:
    source_p: SourceModel
    source_q: SourceModel
    n_grid: list[int] = field(default_factory=lambda: list(DEFAULT_N_GRID))
    trials: int = 20
    estimators: list[EstimatorKind] = field(
        default_factory=lambda: list(EstimatorKind))
    master_seed: int = 0
    output_dir: Path = Path("out")
    smb_n_grid: list[int] | None = None
    smb_trials: int = 50
    diag_n_grid: list[int] = field(
        default_factory=lambda: list(DEFAULT_DIAG_GRID))
    diag_eta: float = 1e-3

    def __post_init__(self):
        if self.source_p.alphabet != self.source_q.alphabet:
            raise ConfigError("source_Q.labels",
                              "must match source_P.labels")
        _check_grid(self.n_grid, "N_grid", minimum=2)
        if self.trials < 1:
            raise ConfigError("trials", "must be at least 1")
        if not self.estimators:
            raise ConfigError("estimators", "must not be empty")
        if self.smb_n_grid is not None:
            _check_grid(self.smb_n_grid, "smb.n_grid", minimum=1)
        self.output_dir = Path(self.output_dir)

    @property
    def rng(self) -> RngSpec:
        return RngSpec(self.master_seed)


def _check_grid(grid, name, minimum):
    if not isinstance(grid, (list, tuple)) or not grid:
        raise ConfigError(name, "must be a nonempty list")
    prev = 0
    for v in grid:
        if not isinstance(v, int) or v < minimum:
            raise ConfigError(name, f"entries must be integers >= {minimum}")
        if v <= prev:
            raise ConfigError(name, "must be strictly increasing")
        prev = v


_CONFIG_KEYS = {"source_P", "source_Q", "N_grid", "trials", "estimators",
                "master_seed", "output_dir", "smb", "diagnose"}


def config_from_dict(d: dict, base_dir: Path | None = None
                     ) -> ExperimentConfig:
    if not isinstance(d, dict):
        raise ConfigError("config", "must be an object")
    for key in d:
        if key not in _CONFIG_KEYS:
            raise ConfigError(key, "unknown field")
    base = Path(base_dir) if base_dir else Path(".")
    kwargs = {}
    for side in ("source_P", "source_Q"):
        if side not in d:
            raise ConfigError(side, "is required")
        spec = d[side]
        if isinstance(spec, str):
            with open(base / spec) as fh:
                spec = json.load(fh)
        kwargs[side.lower()] = model_from_dict(spec, side)
    if "N_grid" in d:
        kwargs["n_grid"] = d["N_grid"]
    if "trials" in d:
        if not isinstance(d["trials"], int):
            raise ConfigError("trials", "must be an integer")
        kwargs["trials"] = d["trials"]
    if "estimators" in d:
        kinds = []
        for name in d["estimators"]:
            try:
                kinds.append(EstimatorKind(name))
            except ValueError:
                raise ConfigError("estimators",
                                  f"unknown estimator {name!r}") from None
        kwargs["estimators"] = kinds
    if "master_seed" in d:
        if not isinstance(d["master_seed"], int):
            raise ConfigError("master_seed", "must be an integer")
        kwargs["master_seed"] = d["master_seed"]
    if "output_dir" in d:
        kwargs["output_dir"] = base / str(d["output_dir"])
    if "smb" in d:
        smb = d["smb"]
        if not isinstance(smb, dict):
            raise ConfigError("smb", "must be an object")
        for key in smb:
            if key not in ("n_grid", "trials"):
                raise ConfigError(f"smb.{key}", "unknown field")
        kwargs["smb_n_grid"] = smb.get("n_grid", list(DEFAULT_SMB_GRID))
        if "trials" in smb:
            kwargs["smb_trials"] = smb["trials"]
    if "diagnose" in d:
        diag = d["diagnose"]
        if not isinstance(diag, dict):
            raise ConfigError("diagnose", "must be an object")
        for key in diag:
            if key not in ("n_grid", "eta"):
                raise ConfigError(f"diagnose.{key}", "unknown field")
        if "n_grid" in diag:
            kwargs["diag_n_grid"] = diag["n_grid"]
        if "eta" in diag:
            kwargs["diag_eta"] = float(diag["eta"])
    return ExperimentConfig(**kwargs)


def config_from_file(path) -> ExperimentConfig:
    path = Path(path)
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as e:
        raise ConfigError(str(path), f"not valid JSON ({e})") from None
    return config_from_dict(raw, base_dir=path.parent)


@dataclass(frozen=True)
class EstimateRecord:
    estimator: str
    n: int
    trial: int
    seed: int
    value_nats: float

    @property
    def value_bits(self) -> float:
        return self.value_nats / math.log(2.0)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[EstimateRecord]
    reference: float | None
    paths: dict[str, Path]

    def values(self, kind: EstimatorKind, n: int) -> np.ndarray:
        name = kind.value
        return np.array([r.value_nats for r in self.records
                         if r.estimator == name and r.n == n])


def _trial_records(config: ExperimentConfig, trial: int
                   ) -> list[EstimateRecord]:
    rng = config.rng
    n_max = config.n_grid[-1]
    x = sample(config.source_p, n_max, rng.stream(trial, "x"))
    y = sample(config.source_q, n_max, rng.stream(trial, "y"))
    index = build_index(x, n_max)
    seed = rng.seed_of(trial, "x")
    out = []
    for n in config.n_grid:
        for kind in config.estimators:
            est: Estimate = estimate(kind, y, x, n, index)
            out.append(EstimateRecord(kind.value, n, trial, seed, est.value))
    return out


def _fmt(v: float) -> str:
    return repr(float(v))


def run_experiment(config: ExperimentConfig,
                   threads: int | None = None) -> ExperimentResult:
    """Run all trials, write estimates.csv and summary.csv, print medians."""
    if threads is None:
        threads = int(os.environ.get("ZMLAB_THREADS", "1"))
    trials = list(range(config.trials))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            per_trial = list(pool.map(_trial_records,
                                      [config] * len(trials), trials))
    else:
        per_trial = [_trial_records(config, t) for t in trials]
    records = [r for block in per_trial for r in block]
    records.sort(key=lambda r: (r.estimator, r.n, r.trial))

    reference = cross_entropy_rate(config.source_q, config.source_p)
    if reference is NUMERIC:
        if config.smb_n_grid is not None:
            series = smb_series(config.source_p, config.source_q,
                                config.smb_n_grid, config.smb_trials,
                                config.rng)
            reference = float(series.mean()[-1])
        else:
            reference = None

    outdir = config.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    est_path = outdir / "estimates.csv"
    with open(est_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["estimator", "N", "trial", "seed",
                    "value_nats", "value_bits"])
        for r in records:
            w.writerow([r.estimator, r.n, r.trial, r.seed,
                        _fmt(r.value_nats), _fmt(r.value_bits)])

    sum_path = outdir / "summary.csv"
    with open(sum_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["estimator", "N", "median_nats", "q1_nats", "q3_nats",
                    "reference_nats"])
        ref_repr = "" if reference is None else _fmt(reference)
        for kind in sorted(k.value for k in config.estimators):
            for n in config.n_grid:
                vals = np.array([r.value_nats for r in records
                                 if r.estimator == kind and r.n == n])
                w.writerow([kind, n, _fmt(np.median(vals)),
                            _fmt(np.percentile(vals, 25)),
                            _fmt(np.percentile(vals, 75)), ref_repr])

    if reference is not None:
        print(f"reference h_c = {reference:.6f} nats")
    else:
        print("reference h_c unavailable (no closed form, no smb section)")
    n_last = config.n_grid[-1]
    for kind in config.estimators:
        vals = np.array([r.value_nats for r in records
                         if r.estimator == kind.value and r.n == n_last])
        print(f"{kind.value:>16s}  N={n_last}  "
              f"median={np.median(vals):.6f} nats")
    return ExperimentResult(config, records, reference,
                            {"estimates": est_path, "summary": sum_path})


def run_smb(config: ExperimentConfig) -> Path:
    """Sample the -ln P / n series and write smb.csv."""
    grid = config.smb_n_grid or list(DEFAULT_SMB_GRID)
    series = smb_series(config.source_p, config.source_q, grid,
                        config.smb_trials, config.rng)
    outdir = config.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "smb.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["trial", "n", "value"])
        for t in range(series.values.shape[0]):
            for j, n in enumerate(series.n_grid.tolist()):
                w.writerow([t, n, _fmt(series.values[t, j])])
    print(f"smb mean at n={series.n_grid[-1]}: {series.mean()[-1]:.6f} nats")
    return path


def run_pressure(config: ExperimentConfig, ns: list[int],
                 alphas: np.ndarray) -> Path:
    """Write pressure.csv with one block of alpha rows per depth."""
    from .infotheory import pressure_curves
    curves = pressure_curves(config.source_p, config.source_q, ns, alphas)
    outdir = config.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "pressure.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "alpha", "q_over_n"])
        for curve in curves:
            for a, v in zip(curve.alphas.tolist(), curve.values.tolist()):
                w.writerow([curve.n, _fmt(a), _fmt(v)])
    for curve in curves:
        print(f"n={curve.n}: support {curve.support_size} words, "
              f"q_n(0)/n = {curve.value_at(0.0):.3e}")
    return path
