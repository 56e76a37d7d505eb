"""Unitary finite Fourier transform between the price and owner bases.

Both directions carry the 1/sqrt(N) factor, so the transform is unitary:
the forward kernel is exp(-2*pi*i*k*n/N), the inverse exp(+2*pi*i*k*n/N).
Small lattices are transformed by the defining O(N^2) matrix product.
Larger ones go through a Bluestein chirp factorization,

    k*n = (k^2 + n^2 - (k - n)^2) / 2,

which turns the transform into one complex convolution that runs on a
power-of-two FFT of length >= 2N - 1, so any N (prime included) costs
O(N log N). Phase tables are indexed with integer arithmetic reduced
mod N (or mod 2N for the chirp) before any trig call, so large index
products never lose precision.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DimensionError
from .lattice import LatticeFunction

NAIVE_CUTOFF = 32  # defining matrix product up to here, Bluestein beyond
PHASE_TABLE_TOL = 1e-14


def _roots_of_unity(order: int, sign: int) -> np.ndarray:
    """Table exp(sign * 2*pi*i * j / order) for j = 0 .. order-1."""
    return np.exp(sign * 2j * np.pi / order * np.arange(order))


def dft_matrix(size: int, direction: str = "forward") -> np.ndarray:
    """Dense unitary kernel: entry (k, n) is exp(-+2*pi*i*k*n/N)/sqrt(N)."""
    if size < 1:
        raise ValueError("size must be >= 1")
    sign = -1 if direction == "forward" else +1
    table = _roots_of_unity(size, sign)
    k = np.arange(size)
    return table[np.outer(k, k) % size] / np.sqrt(size)


@lru_cache(maxsize=None)
def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.intp)
    for i in range(1, n):
        rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (bits - 1))
    rev.setflags(write=False)
    return rev


def _fft_pow2(x: np.ndarray, sign: int) -> np.ndarray:
    """Radix-2 DFT with kernel exp(sign*2*pi*i*j*k/n); unscaled."""
    n = x.size
    a = x[_bit_reverse_indices(n)].astype(np.complex128)
    size = 2
    while size <= n:
        half = size // 2
        tw = np.exp(sign * 2j * np.pi / size * np.arange(half))
        blocks = a.reshape(-1, size)
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * tw
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        size *= 2
    return a


def _next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length()


class FourierPlan:
    """Precomputed tables for one lattice size and one direction.

    ``method`` picks the execution path: "direct" applies the defining
    kernel matrix, "bluestein" the chirp convolution, "auto" defers to
    the size cutoff. Plans are immutable and safe to share.
    """

    def __init__(self, size: int, direction: str = "forward", method: str = "auto"):
        if size < 1:
            raise ValueError("size must be >= 1")
        if direction not in ("forward", "inverse"):
            raise ValueError(f"unknown direction {direction!r}")
        if method == "auto":
            method = "direct" if size <= NAIVE_CUTOFF else "bluestein"
        if method not in ("direct", "bluestein"):
            raise ValueError(f"unknown method {method!r}")
        self.size = size
        self.direction = direction
        self.method = method
        sign = -1 if direction == "forward" else +1
        self._scale = 1.0 / np.sqrt(size)
        if method == "direct":
            self.phases = _roots_of_unity(size, sign)
            k = np.arange(size)
            self._matrix = self.phases[np.outer(k, k) % size] * self._scale
            self._matrix.setflags(write=False)
        else:
            # 2N-th roots; chirp[j] = table[j^2 mod 2N] = exp(sign*pi*i*j^2/N)
            self.phases = np.exp(sign * 1j * np.pi / size * np.arange(2 * size))
            j = np.arange(size)
            self._chirp = self.phases[(j * j) % (2 * size)]
            self._chirp.setflags(write=False)
            kernel = np.conj(self._chirp)
            conv_len = _next_pow2(2 * size - 1)
            padded = np.zeros(conv_len, dtype=np.complex128)
            padded[:size] = kernel
            padded[conv_len - size + 1:] = kernel[1:][::-1]
            self._conv_len = conv_len
            self._kernel_hat = _fft_pow2(padded, -1)
            self._kernel_hat.setflags(write=False)
        self.phases.setflags(write=False)
        defect = float(np.max(np.abs(np.abs(self.phases) - 1.0)))
        if defect > PHASE_TABLE_TOL:
            raise ValueError(f"phase table off the unit circle by {defect!r}")

    def apply(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (self.size,):
            raise DimensionError(
                f"plan for size {self.size} applied to shape {values.shape}"
            )
        if self.method == "direct":
            return self._matrix @ values
        padded = np.zeros(self._conv_len, dtype=np.complex128)
        padded[:self.size] = values * self._chirp
        spectrum = _fft_pow2(padded, -1) * self._kernel_hat
        conv = _fft_pow2(spectrum, +1) / self._conv_len
        return conv[:self.size] * self._chirp * self._scale


@lru_cache(maxsize=64)
def plan_for(size: int, direction: str = "forward", method: str = "auto") -> FourierPlan:
    return FourierPlan(size, direction, method)


def _checked_values(phi, plan: FourierPlan) -> np.ndarray:
    values = phi.values
    if values.size != plan.size:
        raise DimensionError(f"function size {values.size} vs plan size {plan.size}")
    return values


def forward(phi, plan: FourierPlan | None = None) -> LatticeFunction:
    """Map price amplitudes to owner amplitudes."""
    if plan is None:
        plan = plan_for(phi.size, "forward")
    elif plan.direction != "forward":
        raise ValueError("forward() needs a forward plan")
    return LatticeFunction(plan.apply(_checked_values(phi, plan)))


def inverse(psi, plan: FourierPlan | None = None) -> LatticeFunction:
    """Map owner amplitudes back to price amplitudes."""
    if plan is None:
        plan = plan_for(psi.size, "inverse")
    elif plan.direction != "inverse":
        raise ValueError("inverse() needs an inverse plan")
    return LatticeFunction(plan.apply(_checked_values(psi, plan)))


def forward_naive(phi) -> LatticeFunction:
    """Reference path: the defining double sum, no acceleration."""
    plan = plan_for(phi.size, "forward", "direct")
    return LatticeFunction(plan.apply(_checked_values(phi, plan)))
