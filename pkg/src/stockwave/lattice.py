"""Complex amplitudes on the cyclic price lattice {0, ..., N-1}.

The ambient space is C^N with the usual inner product. For a normalized
state Phi, |Phi(n)|^2 is the probability that a trade happens at price n,
and |F[Phi](k)|^2 the probability that trader k currently owns the stock.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError, DimensionError

NORMALIZATION_TOL = 1e-12
PROBABILITY_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LatticeFunction:
    """A complex amplitude for each of the N price levels."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("amplitudes must form a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("amplitudes must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def size(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class NormalizedState:
    """A LatticeFunction whose probabilities sum to one."""

    base: LatticeFunction

    def __post_init__(self):
        total = float(np.sum(np.abs(self.base.values) ** 2))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"state is not normalized: sum of |Phi(n)|^2 = {total!r}")

    @classmethod
    def _trusted(cls, base: LatticeFunction) -> "NormalizedState":
        # Integrator internals: norm drift there is policed against a looser
        # conservation budget, so skip the strict construction check.
        obj = object.__new__(cls)
        object.__setattr__(obj, "base", base)
        return obj

    @property
    def values(self) -> np.ndarray:
        return self.base.values

    @property
    def size(self) -> int:
        return self.base.size


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Non-negative weights over the N lattice points, summing to one."""

    probs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.probs, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("probabilities must form a non-empty 1-d sequence")
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(float(arr.sum()) - 1.0) > PROBABILITY_SUM_TOL:
            raise ValueError(f"probabilities sum to {float(arr.sum())!r}, not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def size(self) -> int:
        return self.probs.size

    def mean(self) -> float:
        """First moment with the lattice index as the value."""
        return float(np.dot(np.arange(self.size), self.probs))


def inner_product(phi: LatticeFunction, psi: LatticeFunction) -> complex:
    """Scalar product, conjugate-linear in the first argument."""
    if phi.size != psi.size:
        raise DimensionError(f"size mismatch: {phi.size} vs {psi.size}")
    return complex(np.vdot(phi.values, psi.values))


def norm(phi: LatticeFunction) -> float:
    return float(np.linalg.norm(phi.values))


def normalize(phi: LatticeFunction) -> NormalizedState:
    """Scale to unit norm; rejects the zero function."""
    scale = norm(phi)
    if scale == 0.0:
        raise DegenerateStateError("zero-norm function has no normalized form")
    return NormalizedState(LatticeFunction(phi.values / scale))


def price_distribution(state: NormalizedState) -> ProbabilityVector:
    """Probability of each trade price: |Phi(n)|^2."""
    return ProbabilityVector(np.abs(state.values) ** 2)


def owner_distribution(state: NormalizedState) -> ProbabilityVector:
    """Probability of each owner: |F[Phi](k)|^2."""
    from .fourier import forward  # lattice is imported by fourier

    return ProbabilityVector(np.abs(forward(state.base).values) ** 2)
