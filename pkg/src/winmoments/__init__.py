"""Exact win-count moments for hierarchical pairwise comparison trials.

Builds the skew outcome matrix from a prespecified hierarchy of
measures, then computes the exact mean and covariance of the treatment
and control win counts under arm permutation and under the two-sample
bootstrap in O(N^2) time, replacing randomized resampling. Includes the
hierarchical score test, win-ratio inference, and brute-force oracles
that validate every closed form.
"""

from __future__ import annotations

from ._kernels import BACKEND as KERNEL_BACKEND
from .boot import BootCaseCounts, bootstrap_moments
from .errors import (
    DegenerateDesignError,
    GuardError,
    InputError,
    MatrixInvalidError,
    RatioUndefinedError,
    ShapeError,
    WinMomentsError,
)
from .graph import ArmAssignment, GraphSummary, VertexSummary, summarize
from .oracle import (
    GUARD_LIMIT,
    McConfig,
    enumerate_bootstrap_moments,
    enumerate_bootstrap_win_counts,
    enumerate_permutation_moments,
    enumerate_permutation_win_counts,
    mc_bootstrap,
    mc_bootstrap_win_counts,
    mc_permutation,
    mc_permutation_win_counts,
)
from .outcome import (
    CONTROL,
    TREATMENT,
    Direction,
    Kind,
    MeasureSpec,
    MeasureValue,
    OutcomeMatrix,
    PatientRecord,
    build_outcome_matrix,
    compare_pair,
    validate_hierarchy,
    validate_record,
)
from .perm import FsResult, PermCaseCounts, fs_test, permutation_moments
from .ratio import WinRatioResult, win_ratio
from .results import Method, WinMoments

__version__ = "0.1.0"

__all__ = [
    "ArmAssignment",
    "BootCaseCounts",
    "CONTROL",
    "DegenerateDesignError",
    "Direction",
    "FsResult",
    "GUARD_LIMIT",
    "GraphSummary",
    "GuardError",
    "InputError",
    "KERNEL_BACKEND",
    "Kind",
    "MatrixInvalidError",
    "McConfig",
    "MeasureSpec",
    "MeasureValue",
    "Method",
    "OutcomeMatrix",
    "PatientRecord",
    "PermCaseCounts",
    "RatioUndefinedError",
    "ShapeError",
    "TREATMENT",
    "VertexSummary",
    "WinMoments",
    "WinMomentsError",
    "WinRatioResult",
    "bootstrap_moments",
    "build_outcome_matrix",
    "compare_pair",
    "enumerate_bootstrap_moments",
    "enumerate_bootstrap_win_counts",
    "enumerate_permutation_moments",
    "enumerate_permutation_win_counts",
    "fs_test",
    "mc_bootstrap",
    "mc_bootstrap_win_counts",
    "mc_permutation",
    "mc_permutation_win_counts",
    "permutation_moments",
    "summarize",
    "validate_hierarchy",
    "validate_record",
    "win_ratio",
]
