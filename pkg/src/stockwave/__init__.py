"""Wavefunction-style stock price/ownership states on a cyclic lattice."""

from .errors import (
    ConservationError,
    ContractError,
    ConvergenceError,
    DegenerateStateError,
    DimensionError,
    InvariantViolationError,
    NumericalConsistencyError,
    StockwaveError,
)
from .lattice import (
    LatticeFunction,
    NormalizedState,
    ProbabilityVector,
    inner_product,
    norm,
    normalize,
    owner_distribution,
    price_distribution,
)
from .fourier import FourierPlan, dft_matrix, forward, forward_naive, inverse, plan_for
from .states import (
    PacketParams,
    ThetaParams,
    delta_state,
    gamma_state,
    gaussian_packet,
    theta3,
    upsilon_state,
)
from .eigen import hermitian_eigensystem
from .operators import (
    LinearOperatorRepr,
    SpectrumResult,
    UncertaintyReport,
    commutator,
    commutator_spectrum,
    expectation,
    ownership_operator,
    price_operator,
    uncertainty,
    uncertainty_product_report,
)
from .evolution import (
    EvolutionParams,
    HarmonicPotential,
    LinearPotential,
    ModulatedPotential,
    Potential,
    TabulatedPotential,
    TrajectoryRecord,
    ZeroPotential,
    evolve,
    exact_propagator,
    kinetic_half_step,
    potential_full_step,
    static_hamiltonian,
    strang_step,
)
from .scenario import (
    CustomStateSpec,
    DeltaStateSpec,
    EvolutionSpec,
    GaussianStateSpec,
    OutputSpec,
    Scenario,
    ScenarioError,
    build_initial_state,
    parse_scenario,
    serialize_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "ConservationError",
    "ContractError",
    "ConvergenceError",
    "CustomStateSpec",
    "DegenerateStateError",
    "DeltaStateSpec",
    "DimensionError",
    "EvolutionParams",
    "EvolutionSpec",
    "FourierPlan",
    "GaussianStateSpec",
    "HarmonicPotential",
    "InvariantViolationError",
    "LatticeFunction",
    "LinearOperatorRepr",
    "LinearPotential",
    "ModulatedPotential",
    "NormalizedState",
    "NumericalConsistencyError",
    "OutputSpec",
    "PacketParams",
    "Potential",
    "ProbabilityVector",
    "Scenario",
    "ScenarioError",
    "SpectrumResult",
    "StockwaveError",
    "TabulatedPotential",
    "ThetaParams",
    "TrajectoryRecord",
    "UncertaintyReport",
    "ZeroPotential",
    "build_initial_state",
    "commutator",
    "commutator_spectrum",
    "delta_state",
    "dft_matrix",
    "evolve",
    "exact_propagator",
    "expectation",
    "forward",
    "forward_naive",
    "gamma_state",
    "gaussian_packet",
    "hermitian_eigensystem",
    "inner_product",
    "inverse",
    "kinetic_half_step",
    "norm",
    "normalize",
    "owner_distribution",
    "ownership_operator",
    "parse_scenario",
    "plan_for",
    "potential_full_step",
    "price_distribution",
    "price_operator",
    "serialize_scenario",
    "static_hamiltonian",
    "strang_step",
    "theta3",
    "uncertainty",
    "uncertainty_product_report",
    "upsilon_state",
]
