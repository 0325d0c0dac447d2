"""Monte Carlo experiments on G(n, c/n): per-trial rigid-component
statistics, sweeps over (n, c) grids, and coupled-sample monotonicity.

Trial seeds are derived from the master seed by a stable hash, so results are
independent of execution order and thread count; sweep output is a
deterministic fold over records sorted by (n, c, trial_index).
"""

from __future__ import annotations

import csv
import hashlib
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .graphs import RNG_NAME, RNG_VERSION, Graph, count_triangles, sample_gnp
from .pebble import RigidDecomposition, rigid_components

DEFAULT_GAP_LOWER = 4
DEFAULT_GAP_UPPER_FRACTION = 0.01

CSV_COLUMNS = [
    "n", "c", "trial", "seed", "m", "triangle", "largest_span",
    "n_components", "n_trivial", "gap_violation", "n_linear",
]


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...]
    c_values: tuple[float, ...]
    trials: int
    master_seed: int
    gap_lower: int = DEFAULT_GAP_LOWER
    gap_upper_fraction: float = DEFAULT_GAP_UPPER_FRACTION

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.gap_lower < 4:
            raise ValueError(f"gap_lower must be >= 4, got {self.gap_lower}")
        if not (0 < self.gap_upper_fraction < 1):
            raise ValueError(
                f"gap_upper_fraction must be in (0, 1), got {self.gap_upper_fraction}"
            )


@dataclass(frozen=True)
class TrialRecord:
    n: int
    c: float
    trial_index: int
    derived_seed: int
    edge_count: int
    triangle_present: bool
    component_size_histogram: dict[int, int]
    largest_span: int
    n_components: int
    n_trivial: int
    count_linear_components: int
    gap_violation: bool

    def sort_key(self):
        return (self.n, self.c, self.trial_index)


def derive_trial_seed(master_seed: int, n: int, c: float, trial_index: int) -> int:
    """Stable 64-bit seed for one trial, independent of execution order."""
    key = f"{master_seed}|{n}|{float(c)!r}|{trial_index}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def run_trial(
    n: int,
    c: float,
    seed: int,
    trial_index: int = 0,
    gap_lower: int = DEFAULT_GAP_LOWER,
    gap_upper_fraction: float = DEFAULT_GAP_UPPER_FRACTION,
) -> TrialRecord:
    """Sample G(n, c/n), decompose, and record component statistics."""
    if not c < n:
        raise ValueError(f"mean degree must satisfy c < n, got c={c}, n={n}")
    g = sample_gnp(n, c / n, seed)
    decomp = rigid_components(g)
    assert sum(comp.edge_count for comp in decomp.components) == g.m
    hist = decomp.size_histogram()
    linear_cut = gap_upper_fraction * n
    n_linear = sum(v for k, v in hist.items() if k >= linear_cut)
    gap_violation = any(gap_lower <= k < linear_cut for k in hist)
    return TrialRecord(
        n=n,
        c=c,
        trial_index=trial_index,
        derived_seed=seed,
        edge_count=g.m,
        triangle_present=count_triangles(g) > 0,
        component_size_histogram=hist,
        largest_span=decomp.largest_span,
        n_components=len(decomp.components),
        n_trivial=sum(1 for comp in decomp.components if comp.trivial),
        count_linear_components=n_linear,
        gap_violation=gap_violation,
    )


def dichotomy_check(record: TrialRecord) -> bool:
    """True iff no component span falls in the forbidden window
    [gap_lower, gap_upper_fraction * n)."""
    return not record.gap_violation


def _cell_summary(n: int, c: float, records: list[TrialRecord]) -> dict:
    trials = len(records)
    largest_fracs = [r.largest_span / n for r in records]
    with_linear = [r for r in records if r.count_linear_components >= 1]
    unique = (
        sum(1 for r in with_linear if r.count_linear_components == 1) / len(with_linear)
        if with_linear
        else None
    )
    return {
        "n": n,
        "c": c,
        "trials": trials,
        "mean_edge_count": sum(r.edge_count for r in records) / trials,
        "frac_triangle": sum(r.triangle_present for r in records) / trials,
        "frac_largest_ge_tenth": sum(r.largest_span >= n / 10 for r in records) / trials,
        "frac_gap_violation": sum(r.gap_violation for r in records) / trials,
        "mean_largest_frac": sum(largest_fracs) / trials,
        "median_largest_frac": statistics.median(largest_fracs),
        "frac_linear_present": len(with_linear) / trials,
        "frac_unique_given_linear": unique,
    }


def run_sweep(
    config: ExperimentConfig, threads: int = 1
) -> tuple[list[TrialRecord], list[dict]]:
    """One record per (n, c, trial) plus per-cell summaries.

    Trials run on a thread pool (the decomposition kernel releases the GIL);
    output order is canonical regardless of parallelism.
    """
    jobs = [
        (n, c, derive_trial_seed(config.master_seed, n, c, t), t)
        for n in config.n_values
        for c in config.c_values
        for t in range(config.trials)
    ]

    def worker(job):
        n, c, seed, t = job
        return run_trial(
            n, c, seed, t,
            gap_lower=config.gap_lower,
            gap_upper_fraction=config.gap_upper_fraction,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(worker, jobs))
    else:
        records = [worker(j) for j in jobs]
    records.sort(key=TrialRecord.sort_key)
    summaries = []
    for n in config.n_values:
        for c in config.c_values:
            cell = [r for r in records if r.n == n and r.c == c]
            summaries.append(_cell_summary(n, c, cell))
    return records, summaries


def write_records_csv(records: Iterable[TrialRecord], dest: IO[str]) -> None:
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.n, r.c, r.trial_index, r.derived_seed, r.edge_count,
            int(r.triangle_present), r.largest_span, r.n_components,
            r.n_trivial, int(r.gap_violation), r.count_linear_components,
        ])


def sweep_metadata(config: ExperimentConfig) -> dict:
    """Replay information recorded alongside every sweep."""
    return {
        "rng": RNG_NAME,
        "rng_version": RNG_VERSION,
        "master_seed": config.master_seed,
        "n_values": list(config.n_values),
        "c_values": list(config.c_values),
        "trials": config.trials,
        "gap_lower": config.gap_lower,
        "gap_upper_fraction": config.gap_upper_fraction,
    }


def emergence_scan(
    n: int,
    c_grid: Sequence[float],
    trials: int,
    master_seed: int,
    gap_upper_fraction: float = DEFAULT_GAP_UPPER_FRACTION,
) -> list[dict]:
    """Per-c fraction of trials containing any linear-size component
    (span >= gap_upper_fraction * n); locates the empirical transition."""
    rows = []
    for c in c_grid:
        hits = 0
        for t in range(trials):
            seed = derive_trial_seed(master_seed, n, c, t)
            rec = run_trial(n, c, seed, t, gap_upper_fraction=gap_upper_fraction)
            hits += rec.count_linear_components >= 1
        rows.append({"c": c, "n": n, "trials": trials, "frac_linear": hits / trials})
    return rows


def uniqueness_stat(records: Iterable[TrialRecord]) -> float | None:
    """Among trials with at least one linear-size component, the fraction
    with exactly one; None when no trial qualifies."""
    with_linear = [r for r in records if r.count_linear_components >= 1]
    if not with_linear:
        return None
    return sum(1 for r in with_linear if r.count_linear_components == 1) / len(with_linear)


def coupled_largest_spans(n: int, c_values: Sequence[float], seed: int) -> list[int]:
    """Largest component span for each c, with all graphs coupled through one
    shared uniform per potential edge (edge present iff its uniform < c/n).
    Adding edges never shrinks components, so the result is non-decreasing
    in c for every seed."""
    if any(not c < n for c in c_values):
        raise ValueError("all c values must satisfy c < n")
    iu, ju = np.triu_indices(n, k=1)
    u = np.random.default_rng(seed).random(iu.size)
    spans = []
    for c in c_values:
        mask = u < c / n
        edges = {(int(a), int(b)) for a, b in zip(iu[mask], ju[mask])}
        g = Graph._from_trusted(n, edges)
        spans.append(rigid_components(g).largest_span)
    return spans
