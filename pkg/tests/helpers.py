"""Shared test utilities."""
import numpy as np

from stockwave import LatticeFunction, NormalizedState, normalize


def random_lattice_function(rng, size: int) -> LatticeFunction:
    return LatticeFunction(rng.normal(size=size) + 1j * rng.normal(size=size))


def random_state(rng, size: int) -> NormalizedState:
    return normalize(random_lattice_function(rng, size))


def random_hermitian(rng, size: int) -> np.ndarray:
    m = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return (m + m.conj().T) / 2.0


def charpoly_coefficients(a: np.ndarray) -> np.ndarray:
    # Faddeev-LeVerrier; independent of any eigensolver
    n = a.shape[0]
    coeffs = [1.0 + 0.0j]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)
