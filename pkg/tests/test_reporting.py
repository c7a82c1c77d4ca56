import json

from noisy_grover.ensembles import Seed, UniformSigned
from noisy_grover.experiments import SweepConfig, run_sweep
from noisy_grover.grover import GroverConfig
from noisy_grover.reporting import fmt, records_csv, state_csv, state_json, summary_json
from noisy_grover.statevector import normalize


def test_fmt_has_15_significant_digits():
    assert fmt(1 / 3) == "0.333333333333333"
    assert fmt(0.25) == "0.25"
    assert fmt(1e-20) == "1e-20"


def test_state_serialization_round_trip():
    sv = normalize([1.0, 2.0, 3.0])
    values = [float(v) for v in state_csv(sv).strip().split(",")]
    assert max(abs(a - b) for a, b in zip(values, sv.tolist())) < 1e-15
    assert json.loads(state_json(sv)) == [float(fmt(v)) for v in sv.tolist()]


def test_records_csv_schema():
    s = run_sweep(SweepConfig(GroverConfig(8), UniformSigned(8), 3, Seed(0), 4))
    lines = records_csv(s).splitlines()
    assert lines[0] == "sample_index,variance,variance_ratio,success_probability,success_amplitude"
    assert [l.split(",")[0] for l in lines[1:]] == ["0", "1", "2"]
    data = json.loads(summary_json(s))
    assert data["config"]["seed"] == 0
    assert len(data["bins"]) == 4
