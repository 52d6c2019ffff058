"""Enhanced-quantization calculus: fiducial moments, coherent-state symbols and their dynamics."""

from .exceptions import (
    AccuracyWarning,
    BlowUpError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    TruncationWarning,
)
from .moments import FiducialSpec, MomentTable, StatisticsParam, moment_table
from .specfun import HypParams, WhittakerParams, hyp2f1_partial, hyp2f1_unit, log_gamma, pochhammer, whittaker_w
from .symbol import (
    EnhancedHamiltonian,
    InconsistencyError,
    PhaseSpacePoint,
    PhysicalParams,
    assemble_enhanced,
    classical_limit,
    enhanced_hamiltonian,
    eval_hamiltonian,
    spectator_shift,
    symbol_1dof_quartic,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning",
    "BlowUpError",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "TruncationWarning",
    "FiducialSpec",
    "MomentTable",
    "StatisticsParam",
    "moment_table",
    "HypParams",
    "WhittakerParams",
    "hyp2f1_partial",
    "hyp2f1_unit",
    "log_gamma",
    "pochhammer",
    "whittaker_w",
    "EnhancedHamiltonian",
    "InconsistencyError",
    "PhaseSpacePoint",
    "PhysicalParams",
    "assemble_enhanced",
    "classical_limit",
    "enhanced_hamiltonian",
    "eval_hamiltonian",
    "spectator_shift",
    "symbol_1dof_quartic",
]
