"""Relativistic partial-wave scattering for cutoff spherically symmetric
potentials: threshold phase shifts, bound-state spectra, radial node counts,
and mechanical verification of Levinson's theorem for the Dirac equation.
"""

from .exterior import (
    ThresholdConstants,
    bound_exterior_ratio,
    scattering_pair,
    threshold_constants,
    threshold_exterior,
)
from .interior import (
    EnergyPoint,
    ProjectiveRatio,
    RadialSamples,
    closed_form_threshold_ratio,
    integrate_radial,
    interior_ratio,
)
from .levinson import (
    LevinsonReport,
    MethodDisagreement,
    check_modified_statement,
    check_strong_statement,
    verify_levinson,
    verify_levinson_detailed,
)
from .nodes import NodeReport, count_interior_nodes, exterior_nodes, node_report
from .phases import (
    GridSpec,
    PhaseShiftRecord,
    RefinementError,
    delta_curve,
    tan_delta,
    threshold_limit_by_jumps,
    threshold_tan_asymptotic,
)
from .potential import (
    AngularChannel,
    CutoffPotential,
    PhysicalScale,
    potential_from_json,
    potential_to_json,
    reflect,
    square_well,
)
from .spectrum import (
    GridResolutionError,
    SpectrumReport,
    detect_half_bound,
    find_bound_states,
    solve_negative_kappa,
)
from .sweep import SweepRow, event_ledger_to_threshold_delta, lambda_sweep

__version__ = "0.1.0"

__all__ = [
    "AngularChannel",
    "CutoffPotential",
    "EnergyPoint",
    "GridResolutionError",
    "GridSpec",
    "LevinsonReport",
    "MethodDisagreement",
    "NodeReport",
    "PhaseShiftRecord",
    "PhysicalScale",
    "ProjectiveRatio",
    "RadialSamples",
    "RefinementError",
    "SpectrumReport",
    "SweepRow",
    "ThresholdConstants",
    "bound_exterior_ratio",
    "check_modified_statement",
    "check_strong_statement",
    "closed_form_threshold_ratio",
    "count_interior_nodes",
    "delta_curve",
    "detect_half_bound",
    "event_ledger_to_threshold_delta",
    "exterior_nodes",
    "find_bound_states",
    "integrate_radial",
    "interior_ratio",
    "lambda_sweep",
    "node_report",
    "potential_from_json",
    "potential_to_json",
    "reflect",
    "scattering_pair",
    "solve_negative_kappa",
    "square_well",
    "tan_delta",
    "threshold_constants",
    "threshold_exterior",
    "threshold_limit_by_jumps",
    "threshold_tan_asymptotic",
    "verify_levinson",
    "verify_levinson_detailed",
    "__version__",
]
