"""Seeded ensemble runs, epochs-to-target statistics, and result files.

An ensemble clones a solver prototype once per run with a seed derived
deterministically from the master seed, so results are reproducible,
extensible (adding runs never changes existing ones), and independent of
the execution order of the runs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from sklearn.base import clone

from .graphs import CouplingGraph, write_edge_list

WORKERS_ENV_VAR = "ISINGTREE_WORKERS"


@dataclass(frozen=True)
class RunRecord:
    """Trajectory of one seeded run; ``cuts_per_epoch`` is the running maximum."""

    algorithm: str
    instance: str
    seed: int
    cuts_per_epoch: np.ndarray
    best_cut: int
    best_config: np.ndarray


@dataclass(frozen=True)
class EnsembleStats:
    """Epochs-to-target percentiles and success rate over an ensemble.

    ``epochs_to_solution`` holds the 1-based first epoch each run reached the
    target, or None for censored runs.  Censored runs count toward the
    success-rate denominator but are excluded from percentiles; a percentile
    is None when fewer than that fraction of runs succeeded.
    """

    target: int
    epochs_to_solution: tuple[int | None, ...]
    q1: int | None
    q25: int | None
    q50: int | None
    q75: int | None
    success_rate: float
    n_runs: int
    n_epochs: int


def derive_seed(master_seed: int, run_index: int) -> int:
    """Per-run 64-bit seed: the first output word of SeedSequence([master, index])."""
    ss = np.random.SeedSequence([int(master_seed), int(run_index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV_VAR} must be an integer, got {raw!r}") from None
    return max(1, workers)


def run_ensemble(
    solver,
    graph: CouplingGraph,
    n_runs: int,
    n_epochs: int,
    master_seed: int,
    instance: str = "",
    n_jobs: int | None = None,
) -> list[RunRecord]:
    """Fit ``n_runs`` independently seeded clones of ``solver`` on ``graph``.

    Records come back sorted by run index regardless of execution order.
    ``n_jobs`` defaults to the ISINGTREE_WORKERS environment variable (1 if
    unset); runs share no mutable state, so any worker count gives identical
    results.
    """
    if n_runs < 1:
        raise ValueError(f"n_runs must be at least 1, got {n_runs}")
    algorithm = solver.algorithm

    def one_run(run_index: int) -> RunRecord:
        seed = derive_seed(master_seed, run_index)
        fitted = clone(solver).set_params(seed=seed, n_epochs=n_epochs).fit(graph)
        return RunRecord(
            algorithm=algorithm,
            instance=instance,
            seed=seed,
            cuts_per_epoch=fitted.cuts_per_epoch_,
            best_cut=fitted.best_cut_,
            best_config=fitted.best_config_,
        )

    workers = _worker_count() if n_jobs is None else max(1, n_jobs)
    if workers == 1:
        return [one_run(i) for i in range(n_runs)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one_run, range(n_runs)))


def first_epoch_reaching(cuts_per_epoch: np.ndarray, target: int) -> int | None:
    """1-based first epoch whose running-max cut is >= target, or None."""
    hits = np.nonzero(np.asarray(cuts_per_epoch) >= target)[0]
    return int(hits[0]) + 1 if hits.size else None


def _nearest_rank(sorted_values, fraction: float):
    rank = max(1, math.ceil(fraction * len(sorted_values)))
    return sorted_values[rank - 1]


def epochs_to_target(records: list[RunRecord], target: int) -> EnsembleStats:
    """Nearest-rank epochs-to-target percentiles and success rate."""
    if target < 0:
        raise ValueError(f"target must be non-negative, got {target}")
    epochs = tuple(first_epoch_reaching(r.cuts_per_epoch, target) for r in records)
    reached = sorted(e for e in epochs if e is not None)
    n_runs = len(records)
    success_rate = len(reached) / n_runs if n_runs else 0.0

    def percentile(fraction: float) -> int | None:
        if not reached or success_rate < fraction:
            return None
        return int(_nearest_rank(reached, fraction))

    n_epochs = len(records[0].cuts_per_epoch) if records else 0
    return EnsembleStats(
        target=target,
        epochs_to_solution=epochs,
        q1=percentile(0.01),
        q25=percentile(0.25),
        q50=percentile(0.50),
        q75=percentile(0.75),
        success_rate=success_rate,
        n_runs=n_runs,
        n_epochs=n_epochs,
    )


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares polynomial fit: coefficients in ascending degree order."""

    model: str
    coefficients: tuple[float, ...]
    rms_residual: float


def scaling_fit(points, model: str = "linear") -> ScalingFit:
    """Fit epochs-to-solution against instance size with a line or parabola."""
    degrees = {"linear": 1, "quadratic": 2}
    if model not in degrees:
        raise ValueError(f"model must be one of {tuple(degrees)}, got {model!r}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise ValueError("need at least 3 (size, epochs) points")
    degree = degrees[model]
    vander = np.vander(pts[:, 0], degree + 1, increasing=True)
    if np.linalg.matrix_rank(vander) < degree + 1:
        raise ValueError("rank-deficient fit: sizes do not span the model")
    coeffs, *_ = np.linalg.lstsq(vander, pts[:, 1], rcond=None)
    residuals = vander @ coeffs - pts[:, 1]
    return ScalingFit(
        model=model,
        coefficients=tuple(float(c) for c in coeffs),
        rms_residual=float(np.sqrt(np.mean(residuals**2))),
    )


def graph_content_hash(graph: CouplingGraph) -> str:
    """Git-blob-style SHA-1 of the canonical edge-list serialization."""
    payload = write_edge_list(graph).encode()
    return hashlib.sha1(b"blob %d\0" % len(payload) + payload).hexdigest()


def stats_as_dict(stats: EnsembleStats) -> dict:
    return {
        "target": stats.target,
        "q1": stats.q1,
        "q25": stats.q25,
        "q50": stats.q50,
        "q75": stats.q75,
        "success_rate": stats.success_rate,
        "n_runs": stats.n_runs,
        "n_epochs": stats.n_epochs,
    }


CSV_COLUMNS = ("algorithm", "instance", "seed", "epoch", "cut")


def records_to_csv(records: list[RunRecord]) -> str:
    """One row per (record, epoch), epochs 1-based."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        for epoch, cut in enumerate(record.cuts_per_epoch, start=1):
            writer.writerow([record.algorithm, record.instance, record.seed, epoch, int(cut)])
    return buf.getvalue()


def read_results_csv(text: str) -> dict[tuple[str, str, int], list[int]]:
    """Inverse of :func:`records_to_csv`: cut series keyed by (algorithm, instance, seed)."""
    series: dict[tuple[str, str, int], list[int]] = {}
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header!r}")
    for algorithm, instance, seed, epoch, cut in reader:
        key = (algorithm, instance, int(seed))
        series.setdefault(key, []).append(int(cut))
    return series


def write_results(records: list[RunRecord], summary: dict, out_prefix: str) -> tuple[str, str]:
    """Write <prefix>.csv with all trajectories and <prefix>.json with the summary.

    Output bytes depend only on the inputs (keys are sorted, newlines fixed),
    so identical configurations reproduce identical files.
    """
    csv_path = f"{out_prefix}.csv"
    json_path = f"{out_prefix}.json"
    try:
        with open(csv_path, "w", newline="") as fh:
            fh.write(records_to_csv(records))
        with open(json_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write results under {out_prefix!r}: {exc}") from exc
    return csv_path, json_path
