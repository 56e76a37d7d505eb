"""Price and ownership operators, their spectra, and uncertainty reports.

The price operator multiplies by the lattice index; the ownership
operator is its conjugate under the finite Fourier transform. Their
commutator is anti-hermitian with purely imaginary eigenvalues that
cluster near i*N/(2*pi) for large N.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .eigen import hermitian_eigensystem
from .errors import (
    ContractError,
    DimensionError,
    InvariantViolationError,
    NumericalConsistencyError,
)
from .fourier import dft_matrix
from .lattice import NormalizedState

HERMITICITY_TOL = 1e-12
EXPECTATION_IMAG_TOL = 1e-10
RADICAND_FLOOR = -1e-10
COMMUTATOR_REAL_TOL = 1e-9
ROBERTSON_SLACK = 1e-9
SATURATION_WINDOW = 1e-6
SPECTRUM_RESIDUAL_FACTOR = 1e-8


@dataclass(frozen=True, eq=False)
class LinearOperatorRepr:
    """Dense N x N complex matrix acting on lattice functions."""

    matrix: np.ndarray

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def apply(self, values: np.ndarray) -> np.ndarray:
        return self.matrix @ values

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.matrix))))
        return self.hermiticity_defect() <= tol * scale


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """Commutator eigenvalues sorted by imaginary part, plus the worst
    eigenpair residual max ||A v - lambda v||."""

    eigenvalues: np.ndarray
    residual: float


@dataclass(frozen=True)
class UncertaintyReport:
    delta_price: float
    delta_owner: float
    product: float
    bound: float
    saturated: bool


def price_operator(size: int) -> LinearOperatorRepr:
    """Diagonal multiplication by the price level n."""
    if size < 1:
        raise ValueError("size must be >= 1")
    return LinearOperatorRepr(np.diag(np.arange(size, dtype=np.complex128)))


@lru_cache(maxsize=32)
def _ownership_matrix(size: int) -> np.ndarray:
    fwd = dft_matrix(size, "forward")
    inv = dft_matrix(size, "inverse")
    raw = inv @ (np.arange(size)[:, None] * fwd)
    out = (raw + raw.conj().T) / 2.0  # hermitian up to the bit
    out.setflags(write=False)
    return out


def ownership_operator(size: int) -> LinearOperatorRepr:
    """Price operator conjugated into the owner basis: F^-1 P F."""
    if size < 1:
        raise ValueError("size must be >= 1")
    return LinearOperatorRepr(_ownership_matrix(size))


@lru_cache(maxsize=32)
def _commutator_matrix(size: int) -> np.ndarray:
    p = np.diag(np.arange(size, dtype=np.complex128))
    o = _ownership_matrix(size)
    out = p @ o - o @ p
    out.setflags(write=False)
    return out


def _require_same_size(a: LinearOperatorRepr, b) -> None:
    if a.size != b.size:
        raise DimensionError(f"size mismatch: {a.size} vs {b.size}")


def expectation(operator: LinearOperatorRepr, state: NormalizedState) -> float:
    """Mean value <Phi, A Phi> of a hermitian operator."""
    _require_same_size(operator, state)
    if not operator.is_hermitian():
        raise ContractError(
            f"expectation requires a hermitian operator; defect "
            f"{operator.hermiticity_defect()!r}"
        )
    value = complex(np.vdot(state.values, operator.apply(state.values)))
    if abs(value.imag) > EXPECTATION_IMAG_TOL:
        raise NumericalConsistencyError(
            f"expectation has imaginary residue {value.imag!r}"
        )
    return value.real


def uncertainty(operator: LinearOperatorRepr, state: NormalizedState) -> float:
    """Root-mean-square deviation sqrt(<A^2> - <A>^2)."""
    _require_same_size(operator, state)
    if not operator.is_hermitian():
        raise ContractError(
            f"uncertainty requires a hermitian operator; defect "
            f"{operator.hermiticity_defect()!r}"
        )
    image = operator.apply(state.values)
    mean = complex(np.vdot(state.values, image))
    if abs(mean.imag) > EXPECTATION_IMAG_TOL:
        raise NumericalConsistencyError(f"mean has imaginary residue {mean.imag!r}")
    # <A^2> = <A Phi, A Phi> for hermitian A; avoids squaring the matrix
    mean_square = float(np.vdot(image, image).real)
    radicand = mean_square - mean.real**2
    if radicand < RADICAND_FLOOR:
        raise NumericalConsistencyError(f"negative dispersion {radicand!r}")
    return float(np.sqrt(max(radicand, 0.0)))


def commutator(a: LinearOperatorRepr, b: LinearOperatorRepr) -> LinearOperatorRepr:
    """A B - B A."""
    _require_same_size(a, b)
    return LinearOperatorRepr(a.matrix @ b.matrix - b.matrix @ a.matrix)


def commutator_spectrum(size: int) -> SpectrumResult:
    """Eigenvalues of [P, O], ascending by imaginary part.

    Diagonalizes the hermitian matrix -i*[P, O] by cyclic Jacobi rotations
    and multiplies the real spectrum back by i, so the result is purely
    imaginary by construction.
    """
    if size < 2:
        raise ValueError("size must be >= 2")
    comm = _commutator_matrix(size)
    h = -1j * comm
    h = (h + h.conj().T) / 2.0
    real_values, vectors = hermitian_eigensystem(h)
    eigenvalues = 1j * real_values
    residual = float(
        np.max(np.linalg.norm(comm @ vectors - vectors * eigenvalues[None, :], axis=0))
    )
    bound = SPECTRUM_RESIDUAL_FACTOR * float(np.linalg.norm(comm))
    if residual > bound:
        raise NumericalConsistencyError(
            f"eigenpair residual {residual!r} exceeds {bound!r}"
        )
    return SpectrumResult(eigenvalues=eigenvalues, residual=residual)


def uncertainty_product_report(state: NormalizedState) -> UncertaintyReport:
    """Robertson-relation bookkeeping for one state.

    Returns the price/owner spreads, their product, and the lower bound
    |<[P, O]>|/2; raises InvariantViolationError if the product falls
    below the bound by more than the numerical slack (a bug signal, the
    relation holds for every state).
    """
    size = state.size
    d_price = uncertainty(price_operator(size), state)
    d_owner = uncertainty(ownership_operator(size), state)
    comm_mean = complex(np.vdot(state.values, _commutator_matrix(size) @ state.values))
    if abs(comm_mean.real) > COMMUTATOR_REAL_TOL:
        raise NumericalConsistencyError(
            f"commutator mean has real residue {comm_mean.real!r}"
        )
    bound = 0.5 * abs(comm_mean)
    product = d_price * d_owner
    if product < bound - ROBERTSON_SLACK:
        raise InvariantViolationError(
            f"uncertainty product {product!r} undercuts bound {bound!r}"
        )
    return UncertaintyReport(
        delta_price=d_price,
        delta_owner=d_owner,
        product=product,
        bound=bound,
        saturated=(product - bound) < SATURATION_WINDOW,
    )
