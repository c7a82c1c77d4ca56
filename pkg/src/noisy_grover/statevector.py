"""Real-amplitude state vectors and the amplitude-variance error model.

A register of ``N`` items is a flat vector of real amplitudes with unit
Euclidean norm. Initialization error is measured by the population variance
of the amplitudes, which for a normalized real vector is bounded by ``1/N``
(reached by zero-sum vectors).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import (
    DimensionTooSmallError,
    InvalidEpsilonError,
    NotNormalizedError,
    NumericalFailureError,
    ZeroVectorError,
)

#: Accepted deviation of ``||a||`` from 1 for a vector to count as normalized.
NORM_TOLERANCE = 1e-9
#: Allowed disagreement between the two variance formulas, and the slack on
#: the ``1/N`` bound before a result is treated as a numerical failure.
VARIANCE_TOLERANCE = 1e-12


def _check_dimension(n: int) -> None:
    if n < 2:
        raise DimensionTooSmallError(f"dimension must be >= 2, got {n}")


class StateVector:
    """Immutable normalized vector of ``N >= 2`` real amplitudes."""

    __slots__ = ("_amps",)

    def __init__(self, amps: Iterable[float]):
        a = np.array(amps if isinstance(amps, np.ndarray) else list(amps), dtype=np.float64)
        if a.ndim != 1:
            raise ValueError("amplitudes must form a flat vector")
        _check_dimension(a.size)
        if not np.all(np.isfinite(a)):
            raise NotNormalizedError("amplitudes must be finite real numbers")
        norm = math.sqrt(float(np.dot(a, a)))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NotNormalizedError(f"norm is {norm!r}, expected 1 within {NORM_TOLERANCE}")
        a.flags.writeable = False
        self._amps = a

    @classmethod
    def _trusted(cls, a: np.ndarray) -> "StateVector":
        # Skips validation; callers guarantee a fresh, normalized float64 array.
        sv = object.__new__(cls)
        a.flags.writeable = False
        sv._amps = a
        return sv

    @property
    def amps(self) -> np.ndarray:
        """Read-only view of the amplitudes."""
        return self._amps

    @property
    def n(self) -> int:
        return self._amps.size

    def norm(self) -> float:
        return math.sqrt(float(np.dot(self._amps, self._amps)))

    def tolist(self) -> list[float]:
        return self._amps.tolist()

    def __len__(self) -> int:
        return self._amps.size

    def __getitem__(self, i: int) -> float:
        return float(self._amps[i])

    def __neg__(self) -> "StateVector":
        return StateVector._trusted(-self._amps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return np.array_equal(self._amps, other._amps)

    def __hash__(self) -> int:
        return hash(self._amps.tobytes())

    def __repr__(self) -> str:
        body = ", ".join(format(x, ".15g") for x in self._amps[:8])
        if self.n > 8:
            body += ", ..."
        return f"StateVector([{body}])"


StateLike = Union[StateVector, Iterable[float]]


def as_state(sv: StateLike) -> StateVector:
    """Coerce ``sv`` to a StateVector, raising NotNormalizedError if it is not one."""
    return sv if isinstance(sv, StateVector) else StateVector(sv)


def normalize(raw: Iterable[float]) -> StateVector:
    """Scale ``raw`` to unit norm.

    The scale factor is ``k = 1/sqrt(sum(raw**2))``; afterwards every statistic
    in this module can assume ``k = 1``.
    """
    a = np.array(raw if isinstance(raw, np.ndarray) else list(raw), dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("raw amplitudes must form a flat vector")
    _check_dimension(a.size)
    if not np.all(np.isfinite(a)):
        raise ValueError("raw amplitudes must be finite")
    # Rescale by the max magnitude first so tiny or huge inputs don't under/overflow.
    peak = float(np.max(np.abs(a)))
    if peak == 0.0 or not math.isfinite(peak):
        raise ZeroVectorError("cannot normalize the zero vector")
    scaled = a / peak
    norm = math.sqrt(math.fsum(scaled * scaled))
    if norm < 1e-300:
        raise ZeroVectorError("norm underflows")
    return StateVector._trusted(scaled / norm)


def uniform_state(n: int) -> StateVector:
    """Equal superposition: every amplitude is ``1/sqrt(n)``."""
    _check_dimension(n)
    return StateVector._trusted(np.full(n, 1.0 / math.sqrt(n)))


def max_variance(n: int) -> float:
    """Largest amplitude variance a normalized real ``n``-vector can have."""
    _check_dimension(n)
    return 1.0 / n


def variance_definition(amps: np.ndarray) -> float:
    """``(1/N) * sum((a_i - mean)**2)``."""
    a = np.asarray(amps, dtype=np.float64)
    mu = math.fsum(a) / a.size
    d = a - mu
    return math.fsum(d * d) / a.size


def variance_closed_form(amps: np.ndarray) -> float:
    """``1/N - (sum a_i)**2 / N**2``; valid only for unit-norm input."""
    a = np.asarray(amps, dtype=np.float64)
    s = math.fsum(a)
    return 1.0 / a.size - (s * s) / (a.size * a.size)


@dataclass(frozen=True)
class VarianceReport:
    variance: float
    max_variance: float
    ratio: float


def amplitude_variance(sv: StateLike) -> VarianceReport:
    """Amplitude variance of a normalized vector, with its bound and ratio.

    Both the definition and the closed form are evaluated; a disagreement
    beyond ``VARIANCE_TOLERANCE`` or a variance above ``1/N`` by more than the
    same tolerance raises NumericalFailureError instead of being clamped.
    """
    sv = as_state(sv)
    a = sv.amps
    var = variance_definition(a)
    closed = variance_closed_form(a)
    if abs(var - closed) > VARIANCE_TOLERANCE:
        raise NumericalFailureError(f"variance forms disagree: {var!r} vs {closed!r}")
    vmax = 1.0 / sv.n
    if var > vmax + VARIANCE_TOLERANCE:
        raise NumericalFailureError(f"variance {var!r} exceeds 1/N = {vmax!r}")
    ratio = min(1.0, max(0.0, var / vmax))
    return VarianceReport(variance=var, max_variance=vmax, ratio=ratio)


def _check_eps(eps: float) -> None:
    if not (eps > 0 and math.isfinite(eps)):
        raise InvalidEpsilonError(f"eps must be a positive finite number, got {eps!r}")


def markov_bound(n: int, eps: float) -> float:
    """Markov bound on the fraction of components with ``a_i**2 >= 1/n + eps``.

    The squared amplitudes average exactly ``1/n``, so the bound is
    ``(1/n) / (1/n + eps)``.
    """
    _check_dimension(n)
    _check_eps(eps)
    mean = 1.0 / n
    return mean / (mean + eps)


def empirical_exceedance(sv: StateLike, eps: float) -> float:
    """Fraction of indices whose squared amplitude is at least ``1/N + eps``."""
    _check_eps(eps)
    sv = as_state(sv)
    threshold = 1.0 / sv.n + eps
    count = int(np.count_nonzero(sv.amps * sv.amps >= threshold))
    return count / sv.n
