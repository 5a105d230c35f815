"""Exact simulation of qudit state transfer through a spin-S XX chain."""

from .basis import GlobalPureState, SectorBasis, enumerate_sector, product_state, sector_basis
from .config import (
    ChainConfig,
    ConfigurationError,
    DomainError,
    TruncationError,
    UnsupportedConfigurationError,
)
from .effective import (
    EffectivePrediction,
    effective_evolution,
    mode_spectrum,
    optimal_time,
    phase_gate,
    predict,
)
from .entanglement import (
    BipartiteDensity,
    distribution_efficiency,
    entangled_initial,
    log_negativity,
    partial_transpose,
)
from .hamiltonian import (
    SectorOperator,
    build_bus_hamiltonian,
    build_interaction_hamiltonian,
    build_total_hamiltonian,
    build_zeeman_hamiltonian,
    ladder_coefficient,
)
from .haar import (
    HurwitzAngles,
    average_fidelity_exact,
    average_fidelity_mc,
    hurwitz_state,
    sample_haar,
)
from .propagator import SectorSpectrum, chain_spectra, decompose, evolve, evolve_density
from .thermal import ThermalEnsemble, bus_thermal_state, thermal_average_fidelity
from .transfer import (
    QuditDensity,
    corrected_fidelity,
    initial_transfer_state,
    reduce_to_receiver,
    transfer_channel,
)

__version__ = "0.1.0"
