"""Frequency shifts of an excited two-level probe atom above a 2D square
array of two-level atoms: direct pairwise lattice sums, a bulk/edge/vertex
continuum decomposition, closed-form asymptotic laws, and power-law fits.
"""
from .asymptotics import Regime, all_regimes, asymptotic_shift, expected_exponent, full_closed_form
from .euler_maclaurin import ShiftBreakdown, bulk_term, decompose, edge_term, vertex_term
from .fitting import FitReport, envelope_fit, fit_power_law
from .greens import ZeroSeparation, green_dyadic, pair_coupling
from .lattice_sum import (QuadratureFailure, ShiftResult, SiteBudgetExceeded,
                          offresonant_pair_term, resonant_pair_term, sum_lattice)
from .model import (DetuningTooSmall, Geometry, LatticeSpec, LinewidthTooLarge,
                    ModelParams, NonPositiveLength, NonUnitDipole, ValidatedBundle,
                    ValidationError, validate)

__version__ = "0.1.0"

__all__ = [
    "Regime", "all_regimes", "asymptotic_shift", "expected_exponent", "full_closed_form",
    "ShiftBreakdown", "bulk_term", "decompose", "edge_term", "vertex_term",
    "FitReport", "envelope_fit", "fit_power_law",
    "ZeroSeparation", "green_dyadic", "pair_coupling",
    "QuadratureFailure", "ShiftResult", "SiteBudgetExceeded",
    "offresonant_pair_term", "resonant_pair_term", "sum_lattice",
    "DetuningTooSmall", "Geometry", "LatticeSpec", "LinewidthTooLarge",
    "ModelParams", "NonPositiveLength", "NonUnitDipole", "ValidatedBundle",
    "ValidationError", "validate",
    "__version__",
]
