"""Monte Carlo estimation of delivered fidelity and throughput, and the
full parameter sweep.

Fidelity is the probability that the delivered pair's residual class is
the identity: all noise is stochastic Pauli, so the delivered state is
Bell diagonal (or its logical analogue) and its target-state weight is
exactly that probability.  Uncertainty uses the 95% Wilson score interval,
which stays honest for proportions near 1.

Each trial derives its own RNG stream from (seed, purpose, grid point,
trial index), so trials and grid points are independent and the sweep can
run across processes with order-independent results.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from random import Random
from typing import Iterable, Optional, Sequence

from .params import (HOPS_GRID, LAMBDA_GATE_GRID, P_MEAS_GRID, SimParams)
from .pauli import I
from .strategies import STRATEGIES, normalize_strategy, run_trial

_Z95 = 1.959963984540054

CSV_HEADER = ("strategy,hops,lambda_gate,p_meas,n_trials,fidelity,"
              "fid_ci_low,fid_ci_high,throughput_pairs_per_s,seed")


def trial_rng(seed: int, *parts) -> Random:
    """Deterministic per-trial stream; string seeding hashes via SHA-512."""
    return Random("|".join(str(p) for p in (seed, *parts)))


def wilson_interval(successes: int, n: int) -> tuple[float, float, float]:
    """(point, low, high): sample proportion with its 95% Wilson interval."""
    if n <= 0:
        raise ValueError("need at least one trial")
    p_hat = successes / n
    z2 = _Z95 * _Z95
    denom = 1.0 + z2 / n
    center = (p_hat + z2 / (2 * n)) / denom
    half = (_Z95 / denom) * math.sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n))
    # the interval provably contains p_hat; rounding can tip the boundary
    # cases p_hat in {0, 1}, so clamp against it
    lo = min(max(0.0, center - half), p_hat)
    hi = max(min(1.0, center + half), p_hat)
    return p_hat, lo, hi


@dataclass(frozen=True)
class FidelityEstimate:
    point: float
    ci_low: float
    ci_high: float
    n: int

    def excludes(self, value: float) -> bool:
        return value < self.ci_low or value > self.ci_high


def estimate_fidelity(strategy: str, params: SimParams,
                      n_trials: Optional[int] = None) -> FidelityEstimate:
    """P(residual class = I) over independent trials, with Wilson 95% CI."""
    key = normalize_strategy(strategy)
    n = params.n_trials if n_trials is None else n_trials
    hits = 0
    for trial in range(n):
        rng = trial_rng(params.seed, "fid", key, params.hops,
                        params.lambda_gate, params.p_meas, trial)
        if run_trial(key, params, rng).residual == I:
            hits += 1
    point, lo, hi = wilson_interval(hits, n)
    return FidelityEstimate(point, lo, hi, n)


def estimate_throughput(strategy: str, params: SimParams,
                        t_sim: Optional[float] = None) -> float:
    """Delivered pairs per second: requests run back to back, each new
    request starting when the previous delivery completes, until the
    simulated horizon is spent."""
    key = normalize_strategy(strategy)
    horizon = params.t_sim if t_sim is None else t_sim
    elapsed = 0.0
    count = 0
    while True:
        rng = trial_rng(params.seed, "thr", key, params.hops,
                        params.lambda_gate, params.p_meas, count)
        res = run_trial(key, params, rng)
        if elapsed + res.delivered_at > horizon:
            break
        elapsed += res.delivered_at
        count += 1
    return count / horizon


@dataclass(frozen=True)
class SweepRecord:
    strategy: str
    hops: int
    lambda_gate: float
    p_meas: float
    n_trials: int
    fidelity: FidelityEstimate
    throughput: float
    seed: int

    def csv_row(self) -> str:
        return ",".join([
            self.strategy, str(self.hops),
            _fmt(self.lambda_gate), _fmt(self.p_meas), str(self.n_trials),
            _fmt(self.fidelity.point), _fmt(self.fidelity.ci_low),
            _fmt(self.fidelity.ci_high), _fmt(self.throughput), str(self.seed),
        ])


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def sweep_point(strategy: str, params: SimParams) -> SweepRecord:
    fid = estimate_fidelity(strategy, params)
    thr = estimate_throughput(strategy, params)
    return SweepRecord(strategy, params.hops, params.lambda_gate, params.p_meas,
                       params.n_trials, fid, thr, params.seed)


def _sweep_point_star(args) -> SweepRecord:
    return sweep_point(*args)


def run_sweep(params: SimParams,
              strategies: Sequence[str] = STRATEGIES,
              hops_grid: Sequence[int] = HOPS_GRID,
              lambda_grid: Sequence[float] = LAMBDA_GATE_GRID,
              p_meas_grid: Sequence[float] = P_MEAS_GRID,
              jobs: int = 1,
              progress=None) -> list[SweepRecord]:
    """Full cross product of strategies and grids, canonically sorted.

    Every grid point is seeded independently, so execution order (and
    process-level parallelism) cannot change any record.
    """
    tasks = []
    for strategy in strategies:
        key = normalize_strategy(strategy)
        for h in hops_grid:
            for lam in lambda_grid:
                for pm in p_meas_grid:
                    tasks.append((key, replace(params, hops=h, lambda_gate=lam,
                                               p_meas=pm)))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = []
            for rec in pool.map(_sweep_point_star, tasks, chunksize=1):
                records.append(rec)
                if progress:
                    progress(rec)
    else:
        records = []
        for task in tasks:
            records.append(_sweep_point_star(task))
            if progress:
                progress(records[-1])
    order = {s: i for i, s in enumerate(STRATEGIES)}
    records.sort(key=lambda r: (order[r.strategy], r.hops, r.lambda_gate, r.p_meas))
    return records


def records_to_csv(records: Iterable[SweepRecord]) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.csv_row() for r in records)
    return "\n".join(lines) + "\n"
