"""Numerical toolkit for the universal braid gate on two d-level systems.

Core objects: circulation matrices P_r, their sum-of-squares M satisfying the
Hecke relations, and the unitary one-parameter gate family built from them.
On top sit Schmidt/invariant analysis of two-qudit states, the generation
pipeline with its Monte-Carlo region-coverage experiments, an inverse
parameter solver, and entangling-power estimation.
"""

from .entanglement import (
    InvariantVector,
    SchmidtDecomposition,
    TwoQuditState,
    basis_state,
    concurrence_closed_d2,
    invariants,
    invariants_from_kappa_sq,
    max_entanglement_angle,
    reduced_density,
    schmidt_decompose,
)
from .epower import (
    EntanglingPowerEstimate,
    entangling_power_closed,
    entangling_power_mc,
    haar_product_state,
    operator_linear_entropy,
    swap_matrix,
)
from .errors import (
    DimMismatch,
    EmptyEnsemble,
    IndexOutOfRange,
    NoSolutionFound,
    NotHermitian,
    NotNormalized,
    NotUnitary,
    UnknownCurve,
    WrongAngleCount,
    YbxError,
)
from .generation import (
    ContourSample,
    CoverageReport,
    GenerationParams,
    RegionSample,
    RegionSamples,
    closed_form_direct,
    contour_curve,
    contours_to_csv,
    coverage_report,
    generate,
    in_qutrit_region,
    maximally_entangled_basis,
    product_state,
    qutrit_region_bounds,
    sample_region,
    solve_parameters,
)
from .yang_baxter import (
    HeckeConstants,
    WeightPair,
    YangBaxterGate,
    adjacent_transposition,
    adjacent_transposition_product,
    braid_hecke_residual,
    circulation_matrix,
    hecke_quadratic_residual,
    m_matrix,
    r_matrix,
    unitarity_residuals,
    weight_functions,
    ybe_residual,
)

__version__ = "0.1.0"

__all__ = [
    "ContourSample",
    "CoverageReport",
    "DimMismatch",
    "EmptyEnsemble",
    "EntanglingPowerEstimate",
    "GenerationParams",
    "HeckeConstants",
    "IndexOutOfRange",
    "InvariantVector",
    "NoSolutionFound",
    "NotHermitian",
    "NotNormalized",
    "NotUnitary",
    "RegionSample",
    "RegionSamples",
    "SchmidtDecomposition",
    "TwoQuditState",
    "UnknownCurve",
    "WeightPair",
    "WrongAngleCount",
    "YangBaxterGate",
    "YbxError",
    "adjacent_transposition",
    "adjacent_transposition_product",
    "basis_state",
    "braid_hecke_residual",
    "circulation_matrix",
    "closed_form_direct",
    "concurrence_closed_d2",
    "contour_curve",
    "contours_to_csv",
    "coverage_report",
    "entangling_power_closed",
    "entangling_power_mc",
    "generate",
    "haar_product_state",
    "hecke_quadratic_residual",
    "in_qutrit_region",
    "invariants",
    "invariants_from_kappa_sq",
    "m_matrix",
    "max_entanglement_angle",
    "maximally_entangled_basis",
    "operator_linear_entropy",
    "product_state",
    "qutrit_region_bounds",
    "r_matrix",
    "reduced_density",
    "sample_region",
    "schmidt_decompose",
    "solve_parameters",
    "swap_matrix",
    "unitarity_residuals",
    "weight_functions",
    "ybe_residual",
]
