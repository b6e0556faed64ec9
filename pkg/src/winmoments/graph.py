"""Degree and win-adjacency summaries of an outcome matrix.

Viewing the matrix as a directed graph (an edge i -> j per +1 entry),
both closed-form moment engines only need per-vertex counts: indegree,
outdegree and the number of adjacent cross-arm win edges. One O(N^2)
scan collects all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import summarize as _summarize_kernel
from .errors import DegenerateDesignError, InputError, ShapeError
from .outcome import CONTROL, TREATMENT, OutcomeMatrix


@dataclass(frozen=True, slots=True, eq=False)
class ArmAssignment:
    """Arm labels for the N patients; 1 marks treatment, 0 control."""

    arms: np.ndarray
    m: int = field(init=False)
    n: int = field(init=False)

    def __init__(self, arms) -> None:
        arr = np.ascontiguousarray(arms, dtype=np.uint8)
        if arr.ndim != 1:
            raise ShapeError(f"arm assignment must be one-dimensional, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (CONTROL, TREATMENT)).all():
            bad = arr[~np.isin(arr, (CONTROL, TREATMENT))][0]
            raise InputError(f"arm labels must be 0 or 1, got {bad}")
        m = int(arr.sum())
        n = int(arr.size - m)
        if m == 0 or n == 0:
            raise DegenerateDesignError(f"both arms must be non-empty (m={m}, n={n})")
        arr.setflags(write=False)
        object.__setattr__(self, "arms", arr)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @property
    def n_patients(self) -> int:
        return self.arms.size


@dataclass(frozen=True, slots=True)
class VertexSummary:
    """Counts attached to one patient vertex."""

    indegree: int
    outdegree: int
    t_adj: int
    c_adj: int
    arm: int


@dataclass(frozen=True, slots=True, eq=False)
class GraphSummary:
    """Per-vertex degree arrays plus graph-wide totals."""

    indegree: np.ndarray
    outdegree: np.ndarray
    t_adj: np.ndarray
    c_adj: np.ndarray
    arms: ArmAssignment
    total_edges: int
    observed_t_wins: int
    observed_c_wins: int

    @property
    def n_patients(self) -> int:
        return self.indegree.size

    @property
    def m(self) -> int:
        return self.arms.m

    @property
    def n(self) -> int:
        return self.arms.n

    def vertex(self, v: int) -> VertexSummary:
        return VertexSummary(
            int(self.indegree[v]),
            int(self.outdegree[v]),
            int(self.t_adj[v]),
            int(self.c_adj[v]),
            int(self.arms.arms[v]),
        )


def summarize(u: OutcomeMatrix, arms: ArmAssignment) -> GraphSummary:
    """Collect degrees, win adjacency and totals in one O(N^2) pass."""
    if arms.n_patients != u.n_patients:
        raise ShapeError(f"arm assignment has {arms.n_patients} entries for a {u.n_patients}-patient matrix")
    indegree, outdegree, t_adj, c_adj = _summarize_kernel(u.entries, arms.arms)
    total_edges = int(indegree.sum())
    # every win edge is adjacent to exactly two vertices
    observed_t_wins = int(t_adj.sum()) // 2
    observed_c_wins = int(c_adj.sum()) // 2
    return GraphSummary(
        indegree,
        outdegree,
        t_adj,
        c_adj,
        arms,
        total_edges,
        observed_t_wins,
        observed_c_wins,
    )
