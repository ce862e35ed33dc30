"""Riemann-surface spectra of the 1+1 Dirac oscillator.

Closed-form eigenvalue multifunctions of complex frequency, analytic
continuation and monodromy on their sheets, eigen-spinors with charge
conjugation and the PT-symmetric blocks, and an independent
finite-difference oracle that checks all of it.
"""

from .continuation import (
    AmbiguousTracking,
    Arc,
    ContinuationResult,
    InvalidPath,
    Line,
    PathSpec,
    SheetPermutation,
    continue_path,
    enclosed_branch_points,
    monodromy,
)
from .hermite import (
    N_MAX,
    HermiteFamily,
    hermite_coefficients,
    hermite_poly,
    ho_eigenvalue,
    ho_sheet_value,
    phi,
)
from .numerics import (
    DenseSelfAdjointMatrix,
    biquadratic_roots,
    principal_sqrt,
    quadratic_roots,
    selfadjoint_eigenvalues,
)
from .oracle import (
    GridSpec,
    SampledSpinor,
    apply_dirac_operator,
    eigen_residual,
    hsq_component_matrix,
    oracle_squared_spectrum,
    sample_spinor,
)
from .spectrum import (
    BranchPoint,
    BranchSigns,
    DiracSpinor,
    OscillatorParams,
    PTBlock,
    SpectralFamily,
    branch_points,
    charge_conjugate,
    dirac_energy,
    dirac_spinor,
    family_polynomial,
    pt_block,
    pt_is_broken,
    sheet_values,
)
from .surface import SurfaceMesh, read_mesh_rows, sample_surface, write_mesh

__version__ = "0.1.0"

__all__ = [
    "AmbiguousTracking",
    "Arc",
    "BranchPoint",
    "BranchSigns",
    "ContinuationResult",
    "DenseSelfAdjointMatrix",
    "DiracSpinor",
    "GridSpec",
    "HermiteFamily",
    "InvalidPath",
    "Line",
    "N_MAX",
    "OscillatorParams",
    "PTBlock",
    "PathSpec",
    "SampledSpinor",
    "SheetPermutation",
    "SpectralFamily",
    "SurfaceMesh",
    "apply_dirac_operator",
    "biquadratic_roots",
    "branch_points",
    "charge_conjugate",
    "continue_path",
    "dirac_energy",
    "dirac_spinor",
    "eigen_residual",
    "enclosed_branch_points",
    "family_polynomial",
    "hermite_coefficients",
    "hermite_poly",
    "ho_eigenvalue",
    "ho_sheet_value",
    "hsq_component_matrix",
    "monodromy",
    "oracle_squared_spectrum",
    "phi",
    "principal_sqrt",
    "pt_block",
    "pt_is_broken",
    "quadratic_roots",
    "read_mesh_rows",
    "sample_spinor",
    "sample_surface",
    "selfadjoint_eigenvalues",
    "sheet_values",
    "write_mesh",
]
