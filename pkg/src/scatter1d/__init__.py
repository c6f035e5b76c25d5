"""One-dimensional quantum scattering for finite-range symmetric potentials.

Units are reduced throughout: hbar^2/2m = 1, so E = k^2 and the potential is
carried as U(x0) = 2mV(x0)/hbar^2 on the half-line x0 = |x| >= 0.
"""

from .errors import (
    ConsistencyError,
    DomainError,
    GridError,
    MatchingError,
    NormalizationError,
    PoleError,
    ResolutionError,
    ScatterError,
    StabilityError,
    ThresholdError,
    ValidationError,
)
from .potentials import (
    AnalyticWindowed,
    SquareWell,
    Tabulated,
    evaluate,
    free_potential,
    make_square_well,
    make_truncated_gaussian,
    potential_from_json,
    potential_to_json,
)
from .radial import (
    PhaseShiftRecord,
    RadialSolution,
    extract_phase_shift,
    integrate_radial,
    phase_shift,
    sweep_phase_shifts,
)
from .observables import (
    AmplitudeSet,
    amplitudes_from_phase_shifts,
    asymptotic_waveform,
    optical_theorem_residual,
    partial_wave_waveform,
)
from .effective_range import (
    EffectiveRangeParams,
    ZeroEnergyPair,
    fit_effective_range,
    integral_effective_range,
    k_function,
    two_energy_relation,
    zero_energy_solution,
)
from .square_well import SquareWellParams
from .spectrum import SpectrumReport, count_bound_states_nodes, levinson_check

__version__ = "0.1.0"
