"""Named states: point prices, Gaussian combs, and modulated packets.

The comb

    gamma_kappa(n) = sum_m exp(-kappa*pi/N * (m*N + n)^2)

is N-periodic, strictly positive, and expressible through the theta
series as gamma_kappa(n) = theta3(n/N, i/(kappa*N)) / sqrt(kappa*N).
Its transform stays in the family, F[gamma_kappa] = gamma_{1/kappa} /
sqrt(kappa), so the normalized comb Upsilon_kappa = gamma_kappa /
||gamma_kappa|| satisfies F[Upsilon_kappa] = Upsilon_{1/kappa}. A packet

    Psi(n) = exp(2*pi*i*k0*n/N) * Upsilon_kappa(n - n0)

localizes the price near n0 and the owner near k0 at the same time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeFunction, NormalizedState, normalize

THETA_RELATIVE_CUTOFF = 1e-16  # first omitted theta term vs partial sum
COMB_TERM_FLOOR = 1e-18        # first omitted comb translate


@dataclass(frozen=True)
class ThetaParams:
    """Width parameter kappa > 0 and lattice size N."""

    kappa: float
    size: int

    def __post_init__(self):
        if not (self.kappa > 0.0) or not math.isfinite(self.kappa):
            raise ValueError("kappa must be a positive finite real")
        if self.size < 1:
            raise ValueError("size must be >= 1")


@dataclass(frozen=True)
class PacketParams:
    """Comb parameters plus the price center n0 and owner center k0."""

    theta: ThetaParams
    n0: int
    k0: int

    def __post_init__(self):
        n = self.theta.size
        if not 0 <= self.n0 < n:
            raise ValueError(f"n0 must lie in [0, {n}), got {self.n0}")
        if not 0 <= self.k0 < n:
            raise ValueError(f"k0 must lie in [0, {n}), got {self.k0}")


def delta_state(m: int, size: int) -> NormalizedState:
    """Certain price m: unit amplitude at index m, zero elsewhere."""
    if not 0 <= m < size:
        raise IndexError(f"m must lie in [0, {size}), got {m}")
    values = np.zeros(size, dtype=np.complex128)
    values[m] = 1.0
    return NormalizedState(LatticeFunction(values))


def theta3(z: float, t: float) -> float:
    """Theta series 1 + 2*sum_{a>=1} exp(-pi*t*a^2)*cos(2*pi*a*z).

    Second argument restricted to the purely imaginary axis (tau = i*t,
    t > 0), where the sum is real for real z. Terms are added until the
    first omitted one drops below 1e-16 * (|partial sum| + 1).
    """
    if not (t > 0.0) or not math.isfinite(t):
        raise ValueError("t must be a positive finite real; the series diverges otherwise")
    z = z - math.floor(z)  # the series is exactly 1-periodic in z
    total = 1.0
    a = 1
    while 2.0 * math.exp(-math.pi * t * a * a) >= THETA_RELATIVE_CUTOFF * (abs(total) + 1.0):
        total += 2.0 * math.exp(-math.pi * t * a * a) * math.cos(2.0 * math.pi * a * z)
        a += 1
    return total


def _translate_window(kappa: float, size: int) -> int:
    # Smallest M whose first omitted translate (m = -(M+1) at n = N-1,
    # exponent argument (M*N + 1)^2) is already below the floor.
    m = 1
    while math.exp(-kappa * math.pi / size * (m * size + 1) ** 2) >= COMB_TERM_FLOOR:
        m += 1
    return m


def gamma_state(params: ThetaParams) -> LatticeFunction:
    """Unnormalized Gaussian comb; real and strictly positive."""
    kappa, size = params.kappa, params.size
    window = _translate_window(kappa, size)
    n = np.arange(size)[:, None]
    m = np.arange(-window, window + 1)[None, :]
    values = np.exp(-kappa * np.pi / size * (m * size + n) ** 2).sum(axis=1)
    return LatticeFunction(values)


def upsilon_state(params: ThetaParams) -> NormalizedState:
    """Normalized Gaussian comb Upsilon_kappa."""
    return normalize(gamma_state(params))


def gaussian_packet(params: PacketParams) -> NormalizedState:
    """Comb recentered at price n0 and modulated toward owner k0."""
    size = params.theta.size
    comb = upsilon_state(params.theta).values
    n = np.arange(size)
    shifted = comb[(n - params.n0) % size]
    phases = np.exp(2j * np.pi / size * ((params.k0 * n) % size))
    return NormalizedState(LatticeFunction(phases * shifted))
