"""Grover search on flat real state vectors.

One Grover iteration is the oracle (sign flip of the marked amplitude)
followed by the diffusion operator ``D = 2J/N - I``, i.e. reflection of every
amplitude about the mean. The explicit matrix is kept for verification; runs
use the O(N) reflection.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigurationError,
    DimensionMismatchError,
    DimensionTooSmallError,
    IndexOutOfRangeError,
    NumericalDriftError,
)
from .statevector import NORM_TOLERANCE, StateLike, StateVector, as_state

PAPER = "paper"
STANDARD = "standard"
FIXED = "fixed"


@dataclass(frozen=True)
class IterationSchedule:
    """Rule mapping the problem size to a number of Grover iterations.

    ``paper``: round-half-up of sqrt(N). ``standard``: floor(pi/4 * sqrt(N)),
    at least 1. ``fixed``: exactly ``k`` iterations.
    """

    kind: str = STANDARD
    k: int | None = None

    def __post_init__(self):
        if self.kind not in (PAPER, STANDARD, FIXED):
            raise ConfigurationError(f"unknown schedule kind {self.kind!r}")
        if self.kind == FIXED:
            if self.k is None or self.k < 0:
                raise ConfigurationError("fixed schedule needs k >= 0")
        elif self.k is not None:
            raise ConfigurationError(f"{self.kind} schedule takes no k")

    @classmethod
    def paper(cls) -> "IterationSchedule":
        return cls(PAPER)

    @classmethod
    def standard(cls) -> "IterationSchedule":
        return cls(STANDARD)

    @classmethod
    def fixed(cls, k: int) -> "IterationSchedule":
        return cls(FIXED, int(k))

    @classmethod
    def parse(cls, text: str) -> "IterationSchedule":
        """Parse ``paper``, ``standard`` or ``fixed:K``."""
        text = text.strip().lower()
        m = re.fullmatch(r"fixed:(\d+)", text)
        if m:
            return cls.fixed(int(m.group(1)))
        if text in (PAPER, STANDARD):
            return cls(text)
        raise ConfigurationError(f"cannot parse schedule {text!r}")

    def __str__(self) -> str:
        return f"fixed:{self.k}" if self.kind == FIXED else self.kind


def iteration_count(n: int, schedule: IterationSchedule) -> int:
    if n < 2:
        raise DimensionTooSmallError(f"dimension must be >= 2, got {n}")
    if schedule.kind == FIXED:
        return schedule.k
    if schedule.kind == PAPER:
        return math.floor(math.sqrt(n) + 0.5)
    return max(1, math.floor(math.pi / 4 * math.sqrt(n)))


@dataclass(frozen=True)
class GroverConfig:
    n: int
    marked: int = 1
    schedule: IterationSchedule = field(default_factory=IterationSchedule.standard)

    def __post_init__(self):
        if self.n < 2:
            raise DimensionTooSmallError(f"dimension must be >= 2, got {self.n}")
        _check_index(self.marked, self.n)

    @property
    def iterations(self) -> int:
        return iteration_count(self.n, self.schedule)


@dataclass(frozen=True)
class RunResult:
    final: StateVector
    trace: tuple[float, ...]
    success_amplitude: float
    success_probability: float
    iterations: int


def _check_index(marked: int, n: int) -> None:
    if not 0 <= marked < n:
        raise IndexOutOfRangeError(f"marked index {marked} outside [0, {n})")


def build_diffusion_matrix(n: int) -> np.ndarray:
    """Dense ``n x n`` diffusion matrix: ``2/n`` off the diagonal, ``-1 + 2/n`` on it."""
    if n < 2:
        raise DimensionTooSmallError(f"dimension must be >= 2, got {n}")
    d = np.full((n, n), 2.0 / n)
    np.fill_diagonal(d, -1.0 + 2.0 / n)
    return d


def _reflect(a: np.ndarray) -> np.ndarray:
    return 2.0 * (float(a.sum()) / a.size) - a


def _iterate(a: np.ndarray, marked: int) -> np.ndarray:
    b = a.copy()
    b[marked] = -b[marked]
    return _reflect(b)


def apply_oracle(sv: StateLike, marked: int) -> StateVector:
    sv = as_state(sv)
    _check_index(marked, sv.n)
    a = sv.amps.copy()
    a[marked] = -a[marked]
    return StateVector._trusted(a)


def apply_diffusion(sv: StateLike) -> StateVector:
    """Reflect every amplitude about the mean: ``a_i -> 2*mean - a_i``."""
    sv = as_state(sv)
    return StateVector._trusted(_reflect(sv.amps))


def grover_iterate(sv: StateLike, marked: int) -> StateVector:
    sv = as_state(sv)
    _check_index(marked, sv.n)
    return StateVector._trusted(_iterate(sv.amps, marked))


def run(config: GroverConfig, initial: StateLike) -> RunResult:
    """Apply the scheduled number of Grover iterations and read off the marked item.

    ``trace`` holds the marked amplitude before the first iteration and after
    each one. The state is never renormalized; if the final norm drifts from
    the initial norm by more than ``NORM_TOLERANCE`` NumericalDriftError is raised.
    """
    initial = as_state(initial)
    if initial.n != config.n:
        raise DimensionMismatchError(f"state has dimension {initial.n}, config expects {config.n}")
    k = config.iterations
    m = config.marked
    a = initial.amps
    trace = [float(a[m])]
    for _ in range(k):
        a = _iterate(a, m)
        trace.append(float(a[m]))
    final = StateVector._trusted(np.array(a, copy=True))
    drift = abs(final.norm() - initial.norm())
    if drift > NORM_TOLERANCE:
        raise NumericalDriftError(f"norm drifted by {drift!r} over {k} iterations")
    amp = abs(trace[-1])
    return RunResult(
        final=final,
        trace=tuple(trace),
        success_amplitude=amp,
        success_probability=amp * amp,
        iterations=k,
    )


def closed_form_success(n: int, k: int) -> tuple[float, float]:
    """Marked amplitude and probability after ``k`` iterations from the uniform state.

    Uses the rotation picture: ``sin((2k + 1) * asin(1/sqrt(n)))``. Independent
    of the simulator, so it serves as a check on it.
    """
    if n < 2:
        raise DimensionTooSmallError(f"dimension must be >= 2, got {n}")
    if k < 0:
        raise ConfigurationError("k must be >= 0")
    theta = math.asin(1.0 / math.sqrt(n))
    amp = math.sin((2 * k + 1) * theta)
    return amp, amp * amp
