import numpy as np
import pytest

from stockwave import (
    ConservationError,
    DimensionError,
    EvolutionParams,
    HarmonicPotential,
    LatticeFunction,
    LinearPotential,
    ModulatedPotential,
    PacketParams,
    TabulatedPotential,
    ThetaParams,
    ZeroPotential,
    delta_state,
    evolve,
    exact_propagator,
    expectation,
    gaussian_packet,
    hermitian_eigensystem,
    inverse,
    kinetic_half_step,
    owner_distribution,
    potential_full_step,
    static_hamiltonian,
    strang_step,
)
from stockwave.evolution import _record
from helpers import random_lattice_function


def fig2_packet():
    return gaussian_packet(PacketParams(ThetaParams(2.0 / 3.0, 21), 7, 14))


def test_kinetic_on_owner_eigenstate_is_global_phase():
    size, m, dt, mu = 21, 4, 0.3, 1.0
    eigen = inverse(delta_state(m, size).base)
    out = kinetic_half_step(eigen, dt, mu)
    phase = np.exp(-1j * (dt / 2.0) * m * m / (2.0 * mu))
    assert np.max(np.abs(out.values - phase * eigen.values)) < 1e-13
    from stockwave import NormalizedState

    dist = owner_distribution(NormalizedState(out)).probs
    assert dist[m] == pytest.approx(1.0, abs=1e-12)


def test_kinetic_zero_dt_is_identity():
    rng = np.random.default_rng(71)
    phi = random_lattice_function(rng, 21)
    out = kinetic_half_step(phi, 0.0, 1.0)
    assert np.max(np.abs(out.values - phi.values)) < 1e-13


def test_kinetic_double_half_is_full_step():
    rng = np.random.default_rng(73)
    for _ in range(5):
        phi = random_lattice_function(rng, 21)
        twice = kinetic_half_step(kinetic_half_step(phi, 0.4, 2.0), 0.4, 2.0)
        once = kinetic_half_step(phi, 0.8, 2.0)
        assert np.max(np.abs(twice.values - once.values)) < 1e-12


def test_kinetic_rejects_nonpositive_mu():
    with pytest.raises(ValueError):
        kinetic_half_step(delta_state(0, 4).base, 0.1, 0.0)


def test_potential_zero_is_identity():
    rng = np.random.default_rng(79)
    phi = random_lattice_function(rng, 13)
    out = potential_full_step(phi, 0.7, ZeroPotential(), 0.0)
    assert np.array_equal(out.values, phi.values)


def test_potential_step_preserves_price_probabilities():
    rng = np.random.default_rng(83)
    phi = random_lattice_function(rng, 21)
    out = potential_full_step(phi, 0.9, HarmonicPotential(10.0, 1.3), 0.2)
    assert np.max(np.abs(np.abs(out.values) ** 2 - np.abs(phi.values) ** 2)) < 1e-13


def test_constant_potential_is_global_phase():
    rng = np.random.default_rng(89)
    phi = random_lattice_function(rng, 8)
    c, dt = 2.5, 0.4
    out = potential_full_step(phi, dt, TabulatedPotential((c,) * 8), 0.0)
    assert np.max(np.abs(out.values - np.exp(-1j * dt * c) * phi.values)) < 1e-13


def test_strang_with_zero_potential_is_pure_kinetic():
    packet = fig2_packet()
    params = EvolutionParams(mu=1.0, dt=0.05, steps=1)
    split = strang_step(packet.base, 0.0, params, ZeroPotential())
    pure = kinetic_half_step(kinetic_half_step(packet.base, 0.05, 1.0), 0.05, 1.0)
    assert np.array_equal(split.values, pure.values)


def test_strang_matches_exact_propagator():
    size, mu = 21, 1.0
    potential = HarmonicPotential(center=10.0, strength=0.1)
    packet = fig2_packet()
    duration, dt = 1.0, 1e-3
    exact = exact_propagator(size, mu, potential, 0.0, duration).apply(packet.values)
    params = EvolutionParams(mu=mu, dt=dt, steps=round(duration / dt))
    final = list(evolve(packet, params, potential, record_every=params.steps))[-1]
    assert np.max(np.abs(final.state.values - exact)) < 1e-6


def test_strang_error_quarters_when_dt_halves():
    size, mu = 21, 1.0
    potential = HarmonicPotential(center=10.0, strength=1.0)
    packet = fig2_packet()
    exact = exact_propagator(size, mu, potential, 0.0, 1.0).apply(packet.values)
    errors = []
    for dt in (0.02, 0.01):
        params = EvolutionParams(mu=mu, dt=dt, steps=round(1.0 / dt))
        final = list(evolve(packet, params, potential, record_every=params.steps))[-1]
        errors.append(float(np.max(np.abs(final.state.values - exact))))
    ratio = errors[0] / errors[1]
    assert 3.5 < ratio < 4.5


def test_evolve_stationary_owner_eigenstate():
    size, m = 21, 3
    from stockwave import NormalizedState

    phi0 = NormalizedState(inverse(delta_state(m, size).base))
    params = EvolutionParams(mu=1.0, dt=0.01, steps=200)
    for record in evolve(phi0, params, ZeroPotential(), record_every=50):
        owner = owner_distribution(record.state).probs
        assert owner[m] == pytest.approx(1.0, abs=1e-10)
        price = np.abs(record.state.values) ** 2
        assert np.max(np.abs(price - 1.0 / size)) < 1e-10


def test_evolve_delta_spreads():
    phi0 = delta_state(10, 21)
    params = EvolutionParams(mu=1.0, dt=1e-3, steps=100)
    records = list(evolve(phi0, params, ZeroPotential(), record_every=50))
    assert records[0].delta_price == 0.0
    assert records[-1].delta_price > records[1].delta_price / 2 > 0.0
    # first step against the exact propagator (V = 0: splitting is exact)
    one = list(evolve(phi0, EvolutionParams(mu=1.0, dt=1e-3, steps=1), ZeroPotential()))[-1]
    exact = exact_propagator(21, 1.0, ZeroPotential(), 0.0, 1e-3).apply(phi0.values)
    assert np.max(np.abs(one.state.values - exact)) < 1e-10


def test_evolve_record_schedule():
    phi0 = fig2_packet()
    params = EvolutionParams(mu=1.0, dt=0.1, steps=10, t0=2.0)
    records = list(evolve(phi0, params, ZeroPotential(), record_every=3))
    times = [record.time for record in records]
    assert times == pytest.approx([2.0, 2.3, 2.6, 2.9, 3.0])


def test_evolve_contract_checks():
    phi0 = fig2_packet()
    params = EvolutionParams(mu=1.0, dt=0.1, steps=3)
    with pytest.raises(ValueError):
        evolve(phi0, params, ZeroPotential(), record_every=0)
    with pytest.raises(ValueError):
        EvolutionParams(mu=1.0, dt=0.1, steps=0)
    with pytest.raises(ValueError):
        EvolutionParams(mu=0.0, dt=0.1, steps=1)
    with pytest.raises(ValueError):
        EvolutionParams(mu=1.0, dt=0.0, steps=1)
    with pytest.raises(DimensionError):
        evolve(phi0, params, TabulatedPotential((1.0, 2.0)), record_every=1)


def test_record_flags_norm_drift():
    bad = np.ones(4, dtype=complex)  # norm 2, far beyond the budget
    with pytest.raises(ConservationError):
        _record(0.0, bad)


def test_exact_propagator_zero_duration():
    prop = exact_propagator(13, 1.0, HarmonicPotential(6.0, 0.4), 0.0, 0.0)
    assert np.max(np.abs(prop.matrix - np.eye(13))) < 1e-12


def test_exact_propagator_free_eigenphases():
    size, mu, duration = 16, 1.0, 0.37
    prop = exact_propagator(size, mu, ZeroPotential(), 0.0, duration)
    from stockwave import dft_matrix

    f = dft_matrix(size, "forward")
    k = np.arange(size)
    expected = f.conj().T @ (np.exp(-1j * duration * k * k / (2.0 * mu))[:, None] * f)
    assert np.max(np.abs(prop.matrix - expected)) < 1e-10


def test_exact_propagator_semigroup():
    size, mu = 13, 1.0
    potential = HarmonicPotential(center=6.0, strength=0.8)
    p1 = exact_propagator(size, mu, potential, 0.0, 0.3).matrix
    p2 = exact_propagator(size, mu, potential, 0.0, 0.4).matrix
    p12 = exact_propagator(size, mu, potential, 0.0, 0.7).matrix
    assert np.max(np.abs(p1 @ p2 - p12)) < 1e-9


def test_time_reversal_returns_initial_state():
    packet = fig2_packet()
    mu, dt = 1.0, 0.01
    potential = HarmonicPotential(center=10.0, strength=0.5)
    params = EvolutionParams(mu=mu, dt=dt, steps=1)
    fwd = strang_step(packet.base, 0.0, params, potential)
    # undo with -dt, sampling the potential at the same midpoint
    back = kinetic_half_step(fwd, -dt, mu)
    back = potential_full_step(back, -dt, potential, dt / 2.0)
    back = kinetic_half_step(back, -dt, mu)
    assert np.max(np.abs(back.values - packet.values)) < 1e-10


def test_energy_conserved_for_static_potential():
    size, mu = 21, 1.0
    potential = HarmonicPotential(center=10.0, strength=0.1)
    hamiltonian = static_hamiltonian(size, mu, potential, 0.0)
    params = EvolutionParams(mu=mu, dt=1e-3, steps=2000)
    energies = [
        expectation(hamiltonian, record.state)
        for record in evolve(fig2_packet(), params, potential, record_every=200)
    ]
    energies = np.array(energies)
    assert np.max(np.abs(energies - energies[0])) / abs(energies[0]) < 1e-6


def test_hamiltonian_eigenstates_evolve_with_pure_phase():
    size, mu = 21, 1.0
    potential = HarmonicPotential(center=10.0, strength=0.5)
    hamiltonian = static_hamiltonian(size, mu, potential, 0.0)
    _, vectors = hermitian_eigensystem(hamiltonian.matrix)
    prop = exact_propagator(size, mu, potential, 0.0, 0.29)
    current = vectors[:, 2].copy()
    reference = np.abs(current) ** 2
    for _ in range(15):
        current = prop.apply(current)
        assert np.max(np.abs(np.abs(current) ** 2 - reference)) < 1e-8


def test_norm_drift_stays_tiny():
    params = EvolutionParams(mu=1.0, dt=1e-3, steps=2000)
    potential = HarmonicPotential(center=10.0, strength=1.0)
    records = list(evolve(fig2_packet(), params, potential, record_every=500))
    assert max(record.norm_error for record in records) < 1e-12


def test_modulated_potential_evaluation():
    base = LinearPotential(slope=2.0)
    mod = ModulatedPotential(base=base, amplitude=0.5, omega=np.pi)
    n = np.arange(4)
    assert np.allclose(mod.evaluate(n, 0.0), 0.5 * 2.0 * n)
    assert np.allclose(mod.evaluate(n, 1.0), -0.5 * 2.0 * n)
    assert mod.time_dependent and not base.time_dependent


def test_time_dependent_potential_runs():
    size = 13
    packet = gaussian_packet(PacketParams(ThetaParams(1.0, size), 6, 0))
    potential = ModulatedPotential(HarmonicPotential(6.0, 0.5), amplitude=1.0, omega=2.0)
    params = EvolutionParams(mu=1.0, dt=0.01, steps=100)
    records = list(evolve(packet, params, potential, record_every=25))
    assert len(records) == 5
    assert max(record.norm_error for record in records) < 1e-12


def test_potential_validation():
    with pytest.raises(ValueError):
        HarmonicPotential(center=np.nan, strength=1.0)
    with pytest.raises(ValueError):
        LinearPotential(slope=np.inf)
    with pytest.raises(ValueError):
        TabulatedPotential(())
    with pytest.raises(ValueError):
        TabulatedPotential((1.0, np.nan))
