"""Baseline table, Monte-Carlo sweeps and Markov-bound experiments."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .ensembles import EnsembleSpec, Seed, sample, spec_to_dict
from .errors import ConfigurationError, DegenerateFitError, DimensionMismatchError
from .grover import GroverConfig, IterationSchedule, run
from .statevector import amplitude_variance, empirical_exceedance, markov_bound, uniform_state

PROBABILITY = "probability"
AMPLITUDE = "amplitude"


@dataclass(frozen=True)
class BaselineRow:
    n: int
    iterations: int
    amplitude_pct: float
    probability_pct: float


def run_baseline(sizes: Iterable[int], schedule: IterationSchedule, marked: int = 1) -> list[BaselineRow]:
    """Uniform-start runs for each size, success reported in percent."""
    rows = []
    for n in sizes:
        res = run(GroverConfig(n, marked, schedule), uniform_state(n))
        rows.append(BaselineRow(n, res.iterations, 100.0 * res.success_amplitude, 100.0 * res.success_probability))
    return rows


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: float

    def predict(self, x: float) -> float:
        return self.intercept + self.slope * x


def linear_fit(points: Iterable[tuple[float, float]]) -> RegressionFit:
    """Ordinary least squares ``y = intercept + slope * x``.

    ``r_squared`` is ``1 - SS_res/SS_tot``, taken as 1 for a perfect fit with
    zero total variation.
    """
    pts = list(points)
    if len(pts) < 2:
        raise DegenerateFitError("need at least two points")
    x = np.array([p[0] for p in pts], dtype=np.float64)
    y = np.array([p[1] for p in pts], dtype=np.float64)
    xm = math.fsum(x) / x.size
    ym = math.fsum(y) / y.size
    dx = x - xm
    dy = y - ym
    sxx = math.fsum(dx * dx)
    if sxx == 0.0:
        raise DegenerateFitError("all x values are identical")
    slope = math.fsum(dx * dy) / sxx
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    ss_res = math.fsum(resid * resid)
    ss_tot = math.fsum(dy * dy)
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res == 0.0 else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return RegressionFit(slope, intercept, r2)


@dataclass(frozen=True)
class SweepConfig:
    grover: GroverConfig
    ensemble: EnsembleSpec
    num_samples: int
    seed: Seed
    num_bins: int = 20
    metric: str = PROBABILITY

    def __post_init__(self):
        if self.ensemble.n != self.grover.n:
            raise DimensionMismatchError(
                f"ensemble dimension {self.ensemble.n} != grover dimension {self.grover.n}")
        if self.num_samples < 1:
            raise ConfigurationError("num_samples must be >= 1")
        if self.num_bins < 2:
            raise ConfigurationError("num_bins must be >= 2")
        if self.metric not in (PROBABILITY, AMPLITUDE):
            raise ConfigurationError(f"metric must be {PROBABILITY!r} or {AMPLITUDE!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.grover.n,
            "marked": self.grover.marked,
            "schedule": str(self.grover.schedule),
            "iterations": self.grover.iterations,
            "ensemble": spec_to_dict(self.ensemble),
            "num_samples": self.num_samples,
            "seed": self.seed.master_seed,
            "num_bins": self.num_bins,
            "metric": self.metric,
        }


@dataclass(frozen=True)
class SampleRecord:
    sample_index: int
    variance: float
    variance_ratio: float
    success_probability: float
    success_amplitude: float

    def metric(self, name: str) -> float:
        return self.success_probability if name == PROBABILITY else self.success_amplitude


@dataclass
class SweepSummary:
    config: SweepConfig
    records: list[SampleRecord]
    bin_edges: list[float]
    bin_centers: list[float]
    bin_means: list[float | None]
    bin_stderrs: list[float | None]
    bin_counts: list[int]
    fit_on_records: RegressionFit | None
    fit_on_bins: RegressionFit | None
    min_success: float
    mean_success_top_decile_variance: float

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary; records are left to the CSV."""
        bins = [
            {"lo": lo, "hi": hi, "center": c, "count": n, "mean": m, "stderr": s}
            for lo, hi, c, n, m, s in zip(self.bin_edges[:-1], self.bin_edges[1:], self.bin_centers,
                                          self.bin_counts, self.bin_means, self.bin_stderrs)
        ]
        return {
            "config": self.config.to_dict(),
            "bins": bins,
            "fit_on_records": asdict(self.fit_on_records) if self.fit_on_records else None,
            "fit_on_bins": asdict(self.fit_on_bins) if self.fit_on_bins else None,
            "min_success": self.min_success,
            "mean_success_top_decile_variance": self.mean_success_top_decile_variance,
        }


def evaluate_sample(config: SweepConfig, index: int) -> SampleRecord:
    vec = sample(config.ensemble, config.seed.derive(index))
    rep = amplitude_variance(vec)
    res = run(config.grover, vec)
    return SampleRecord(index, rep.variance, rep.ratio, res.success_probability, res.success_amplitude)


def _evaluate_range(config: SweepConfig, start: int, stop: int) -> list[SampleRecord]:
    return [evaluate_sample(config, i) for i in range(start, stop)]


def _collect(config: SweepConfig, workers: int) -> list[SampleRecord]:
    m = config.num_samples
    if workers <= 1 or m < 2:
        return _evaluate_range(config, 0, m)
    chunk = max(1, math.ceil(m / (workers * 4)))
    bounds = [(s, min(m, s + chunk)) for s in range(0, m, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_evaluate_range, [config] * len(bounds), *zip(*bounds))
        records = [r for part in parts for r in part]
    # Chunks come back in submission order; sort anyway so the contract
    # doesn't depend on executor behaviour.
    records.sort(key=lambda r: r.sample_index)
    return records


def bin_index(ratio: float, num_bins: int) -> int:
    return min(num_bins - 1, int(math.floor(ratio * num_bins)))


def summarize(config: SweepConfig, records: Sequence[SampleRecord]) -> SweepSummary:
    nb = config.num_bins
    edges = [i / nb for i in range(nb + 1)]
    centers = [(i + 0.5) / nb for i in range(nb)]
    groups: list[list[float]] = [[] for _ in range(nb)]
    xs, ys = [], []
    for r in records:
        y = r.metric(config.metric)
        groups[bin_index(r.variance_ratio, nb)].append(y)
        xs.append(r.variance_ratio)
        ys.append(y)

    means: list[float | None] = []
    stderrs: list[float | None] = []
    for g in groups:
        if not g:
            means.append(None)
            stderrs.append(None)
            continue
        mu = math.fsum(g) / len(g)
        means.append(mu)
        if len(g) > 1:
            var = math.fsum((v - mu) ** 2 for v in g) / (len(g) - 1)
            stderrs.append(math.sqrt(var / len(g)))
        else:
            stderrs.append(None)

    def _fit(points):
        try:
            return linear_fit(points)
        except DegenerateFitError:
            return None

    fit_records = _fit(zip(xs, ys))
    fit_bins = _fit((c, mu) for c, mu in zip(centers, means) if mu is not None)

    # Top decile by variance ratio; ties broken by sample index.
    order = sorted(range(len(records)), key=lambda i: (records[i].variance_ratio, records[i].sample_index))
    top = order[len(order) - max(1, math.ceil(len(order) / 10)):]
    top_mean = math.fsum(ys[i] for i in top) / len(top)

    return SweepSummary(
        config=config,
        records=list(records),
        bin_edges=edges,
        bin_centers=centers,
        bin_means=means,
        bin_stderrs=stderrs,
        bin_counts=[len(g) for g in groups],
        fit_on_records=fit_records,
        fit_on_bins=fit_bins,
        min_success=min(ys),
        mean_success_top_decile_variance=top_mean,
    )


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepSummary:
    """Sample, run Grover and aggregate. Output does not depend on ``workers``."""
    return summarize(config, _collect(config, workers))


def default_workers() -> int:
    return max(1, min(8, (os.cpu_count() or 1)))


@dataclass(frozen=True)
class MarkovRow:
    eps: float
    mean_exceedance: float
    bound: float


def markov_experiment(spec: EnsembleSpec, eps_values: Sequence[float], m: int, seed: Seed) -> list[MarkovRow]:
    """Average empirical exceedance over ``m`` samples next to the Markov bound, per eps."""
    if m < 1:
        raise ConfigurationError("m must be >= 1")
    bounds = [markov_bound(spec.n, eps) for eps in eps_values]
    vecs = [sample(spec, seed.derive(i)) for i in range(m)]
    rows = []
    for eps, bound in zip(eps_values, bounds):
        mean = math.fsum(empirical_exceedance(v, eps) for v in vecs) / m
        rows.append(MarkovRow(float(eps), mean, bound))
    return rows



#: Success floor from the claim that recall never drops below about 50%.
CLAIMED_FLOOR = 0.5
#: Slack for "about": a minimum at or above 0.45 counts as consistent.
FLOOR_SLACK = 0.05


@dataclass(frozen=True)
class FloorCheck:
    n: int
    ensemble: dict[str, Any]
    min_success: float
    mean_success_top_decile_variance: float
    max_variance_ratio: float
    supports_floor: bool


def check_success_floor(spec: EnsembleSpec, num_samples: int, seed: Seed,
                        schedule: IterationSchedule | None = None, workers: int = 1) -> FloorCheck:
    """Sweep ``spec`` and test whether success stays above roughly 50%.

    The verdict uses the smallest observed success probability; the mean over
    the highest-variance tenth of samples is reported alongside it.
    """
    schedule = schedule or IterationSchedule.standard()
    cfg = SweepConfig(GroverConfig(spec.n, 1, schedule), spec, num_samples, seed)
    s = run_sweep(cfg, workers=workers)
    return FloorCheck(
        n=spec.n,
        ensemble=spec_to_dict(spec),
        min_success=s.min_success,
        mean_success_top_decile_variance=s.mean_success_top_decile_variance,
        max_variance_ratio=max(r.variance_ratio for r in s.records),
        supports_floor=s.min_success >= CLAIMED_FLOOR - FLOOR_SLACK,
    )
