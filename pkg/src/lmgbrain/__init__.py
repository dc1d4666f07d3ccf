"""Collective-spin "quantum brain" simulator: anisotropic all-to-all qubit
dynamics in the symmetric Dicke sector, modulated by a classical
synaptic-plasticity feedback loop, with a brute-force 2^N oracle."""

__version__ = "0.1.0"

from .analysis import (
    Spectrum,
    dominant_frequency,
    histogram,
    pearson_correlation,
    periodogram,
)
from .bruteforce import full_space_simulate
from .dynamics import (
    ConfigError,
    CoupledState,
    IntegrationError,
    SimulationConfig,
    Trajectory,
    coupled_derivative,
    resolve_dt,
    rk4_step,
    simulate,
)
from .hamiltonian import (
    HamiltonianParts,
    LMGParams,
    apply_hamiltonian,
    build_parts,
    energy_expectation,
)
from .observables import (
    BlockDistribution,
    block_entropy,
    block_linear_entropy,
    block_probabilities,
    excitation_fraction,
    fidelity,
    purity,
)
from .plasticity import (
    PlasticityParams,
    SynapseState,
    effective_coupling,
    plasticity_derivatives,
)
from .presets import preset, preset_names
from .spins import (
    DickeVector,
    SpinSector,
    dicke_state,
    dicke_state_fraction,
    expectation_jz,
    inner_product,
    ladder_minus_coeff,
    ladder_plus_coeff,
    m_values,
)
