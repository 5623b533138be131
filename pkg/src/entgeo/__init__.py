"""Hilbert-Schmidt geometry of entangled states.

Projection of a state's partial transpose onto the trace-1 PSD cone, the
negativity and robustness measures derived from the PT spectrum, and 2-D
slices of the two-qubit state body scanned as data grids.
"""

from .linalg import EigenDecomposition, eig_hermitian, hs_inner, hs_norm, is_psd
from .states import (
    DensityMatrix,
    make_named,
    max_mixed,
    partial_transpose,
    sample_hs_random,
    state_from_json,
    state_to_json,
    validate_state,
)
from .projection import (
    ProjectionResult,
    closest_pt_state,
    distance_closed_form,
    general_negativity,
    negativity,
    project_simplex_psd,
    robustness_to_identity,
    two_qubit_distance,
)
from .geometry import (
    Plane,
    ScanGrid,
    boundary_contours,
    build_plane,
    contours_to_json,
    grid_to_csv,
    scan_plane,
    state_at,
)

__all__ = [
    "EigenDecomposition",
    "eig_hermitian",
    "hs_inner",
    "hs_norm",
    "is_psd",
    "DensityMatrix",
    "make_named",
    "max_mixed",
    "partial_transpose",
    "sample_hs_random",
    "state_from_json",
    "state_to_json",
    "validate_state",
    "ProjectionResult",
    "closest_pt_state",
    "distance_closed_form",
    "general_negativity",
    "negativity",
    "project_simplex_psd",
    "robustness_to_identity",
    "two_qubit_distance",
    "Plane",
    "ScanGrid",
    "boundary_contours",
    "build_plane",
    "contours_to_json",
    "grid_to_csv",
    "scan_plane",
    "state_at",
]

__version__ = "0.1.0"
