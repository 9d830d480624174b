"""Stationary states of a relativistic spin-0 particle in a one-dimensional
square potential with a mixed vector/scalar coupling: scattering amplitudes,
transmission resonances, bound-state spectra and level-coalescence detection.
"""

from .bound import (
    BoundState,
    Branch,
    DisappearanceEvent,
    SpectrumSweep,
    SswEvent,
    antiparticle_crossover_energy,
    count_imaginary_q_solutions,
    detect_ssw,
    find_bound_states,
    pole_residual,
    quantization_residual,
    spectrum_sweep,
    z0_of,
)
from .core import (
    CLASS_EPSILON,
    BranchWavenumber,
    ChannelDensities,
    DomainError,
    Kinematics,
    NumericalError,
    PotentialConfig,
    SolutionClass,
    channel_densities,
    classify,
    critical_potentials,
    exterior_wavenumber,
    interior_q_squared,
    interior_wavenumber,
    kinematics,
)
from .oracle import (
    OracleConfig,
    OracleFailure,
    oracle_bound_states,
    oracle_transmission,
)
from .scatter import (
    Q_LIMIT_EPSILON,
    RESONANCE_TOL,
    ScatteringSolution,
    amplitudes,
    coefficients,
    resonance_energies,
    resonant_v0_for_energy,
    sweep_transmission,
    transmission_regime,
)
from .tables import SweepTable, parse_csv

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "Branch",
    "BranchWavenumber",
    "ChannelDensities",
    "CLASS_EPSILON",
    "DisappearanceEvent",
    "DomainError",
    "Kinematics",
    "NumericalError",
    "OracleConfig",
    "OracleFailure",
    "PotentialConfig",
    "Q_LIMIT_EPSILON",
    "RESONANCE_TOL",
    "ScatteringSolution",
    "SolutionClass",
    "SpectrumSweep",
    "SswEvent",
    "SweepTable",
    "amplitudes",
    "antiparticle_crossover_energy",
    "channel_densities",
    "classify",
    "coefficients",
    "count_imaginary_q_solutions",
    "critical_potentials",
    "detect_ssw",
    "exterior_wavenumber",
    "find_bound_states",
    "interior_q_squared",
    "interior_wavenumber",
    "kinematics",
    "oracle_bound_states",
    "oracle_transmission",
    "parse_csv",
    "pole_residual",
    "quantization_residual",
    "resonance_energies",
    "resonant_v0_for_energy",
    "spectrum_sweep",
    "sweep_transmission",
    "transmission_regime",
    "z0_of",
    "__version__",
]
