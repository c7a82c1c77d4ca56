"""Grover database search from imperfectly initialized real state vectors."""
from .ensembles import (
    ControlledVariance,
    PerturbedUniform,
    Seed,
    UniformPositive,
    UniformSigned,
    sample,
    variance_profile,
)
from .experiments import (
    RegressionFit,
    SampleRecord,
    SweepConfig,
    SweepSummary,
    linear_fit,
    markov_experiment,
    run_baseline,
    run_sweep,
)
from .grover import (
    GroverConfig,
    IterationSchedule,
    RunResult,
    apply_diffusion,
    apply_oracle,
    build_diffusion_matrix,
    closed_form_success,
    grover_iterate,
    iteration_count,
    run,
)
from .statevector import (
    StateVector,
    VarianceReport,
    amplitude_variance,
    empirical_exceedance,
    markov_bound,
    max_variance,
    normalize,
    uniform_state,
)

__version__ = "0.1.0"
