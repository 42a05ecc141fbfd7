"""Negativity of single-qubit channels arising from two-qubit system-bath dynamics."""
from .channelkit import (
    CZ,
    Alpha,
    AssignmentMap,
    CouplingSpec,
    CZDoublePrime,
    CZPrime,
    Custom,
    Hadamard,
    Product,
    Rabi,
    RootSwap,
    Rotation,
    RotationTheta,
    UnitaryConjugation,
    apply_channel,
    apply_sharp,
    realize_coupling,
)
from .choi import ChoiMatrix, analytic_choi_alpha, assemble_choi, load_choi, validate_choi
from .cmatrix import expm_unitary, hermitian_eig, kron, partial_trace_bath, trace_norm
from .errors import (
    ChannegError,
    ConfigurationError,
    ConvergenceError,
    DimensionError,
    DomainError,
    PreconditionError,
    RankError,
    ValidationError,
)
from .negativity import (
    DistanceReport,
    NegativityReport,
    negativity,
    negativity_distance,
    negativity_from_positivity,
    positivity_from_negativity,
    trace_distance,
)
from .qstates import canonical_tomography_vector, decompose_matrix_units
from .sweep import Axis, SweepGrid, SweepResult, cp_map, run_sweep, xform_spectrum

__version__ = "0.1.0"

__all__ = [
    "CZ",
    "Alpha",
    "AssignmentMap",
    "CouplingSpec",
    "CZDoublePrime",
    "CZPrime",
    "Custom",
    "Hadamard",
    "Product",
    "Rabi",
    "RootSwap",
    "Rotation",
    "RotationTheta",
    "UnitaryConjugation",
    "apply_channel",
    "apply_sharp",
    "realize_coupling",
    "ChoiMatrix",
    "analytic_choi_alpha",
    "assemble_choi",
    "load_choi",
    "validate_choi",
    "expm_unitary",
    "hermitian_eig",
    "kron",
    "partial_trace_bath",
    "trace_norm",
    "ChannegError",
    "ConfigurationError",
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "PreconditionError",
    "RankError",
    "ValidationError",
    "DistanceReport",
    "NegativityReport",
    "negativity",
    "negativity_distance",
    "negativity_from_positivity",
    "positivity_from_negativity",
    "trace_distance",
    "canonical_tomography_vector",
    "decompose_matrix_units",
    "Axis",
    "SweepGrid",
    "SweepResult",
    "cp_map",
    "run_sweep",
    "xform_spectrum",
]
