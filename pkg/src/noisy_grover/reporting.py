"""CSV / JSON / SVG serialization of experiment outputs.

Floats are written with 15 significant digits so files are byte-stable.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from typing import Any, Sequence

import numpy as np

from .experiments import BaselineRow, MarkovRow, SweepSummary
from .statevector import StateVector
from .svgplot import scatter_svg

RECORD_FIELDS = ("sample_index", "variance", "variance_ratio", "success_probability", "success_amplitude")


def fmt(x: float) -> str:
    return format(float(x), ".15g")


def _csv(header: Sequence[str] | None, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _round_floats(obj: Any) -> Any:
    # Keeps JSON output at the same precision as the CSV files.
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(_round_floats(obj), indent=2) + "\n"


def state_csv(sv: StateVector) -> str:
    return _csv(None, [[fmt(a) for a in sv.amps]])


def state_json(sv: StateVector) -> str:
    return to_json(sv.tolist())


def diffusion_csv(matrix: np.ndarray) -> str:
    return _csv(None, ([fmt(v) for v in row] for row in matrix))


def baseline_csv(rows: Sequence[BaselineRow]) -> str:
    return _csv(("n", "iterations", "success_amplitude_pct", "success_probability_pct"),
                ([r.n, r.iterations, fmt(r.amplitude_pct), fmt(r.probability_pct)] for r in rows))


def baseline_json(rows: Sequence[BaselineRow]) -> str:
    return to_json([asdict(r) for r in rows])


def records_csv(summary: SweepSummary) -> str:
    return _csv(RECORD_FIELDS, (
        [r.sample_index, fmt(r.variance), fmt(r.variance_ratio), fmt(r.success_probability),
         fmt(r.success_amplitude)]
        for r in summary.records
    ))


def summary_json(summary: SweepSummary) -> str:
    return to_json(summary.to_dict())


def markov_csv(rows: Sequence[MarkovRow]) -> str:
    return _csv(("eps", "mean_exceedance", "markov_bound"),
                ([fmt(r.eps), fmt(r.mean_exceedance), fmt(r.bound)] for r in rows))


def markov_json(rows: Sequence[MarkovRow]) -> str:
    return to_json([asdict(r) for r in rows])


def sweep_svg(summary: SweepSummary, axis: str = "ratio") -> str:
    """Success vs variance scatter with binned means and the binned fit.

    ``axis="variance"`` plots raw variance on [0, 1/N] instead of the ratio.
    """
    cfg = summary.config
    metric = cfg.metric
    scale = 1.0 if axis == "ratio" else 1.0 / cfg.grover.n
    xs = [(r.variance_ratio if axis == "ratio" else r.variance) for r in summary.records]
    ys = [r.metric(metric) for r in summary.records]
    line = [(c * scale, m) for c, m in zip(summary.bin_centers, summary.bin_means) if m is not None]
    fit = None
    if summary.fit_on_bins is not None:
        fit = (summary.fit_on_bins.slope / scale, summary.fit_on_bins.intercept)
    x_label = "variance ratio (variance / max variance)" if axis == "ratio" else "amplitude variance"
    return scatter_svg(
        xs, ys,
        x_range=(0.0, scale),
        line=line,
        fit=fit,
        x_label=x_label,
        y_label=f"success {metric}",
        title=f"N={cfg.grover.n}, {cfg.ensemble.kind}, {cfg.num_samples} samples",
    )
