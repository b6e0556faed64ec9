"""NumPy implementations of the O(N^2) matrix-scan kernels."""

from __future__ import annotations

import numpy as np


def summarize(entries: np.ndarray, arms: np.ndarray):
    """Per-vertex degrees and adjacent cross-arm win counts in one pass.

    Returns (indegree, outdegree, t_adj, c_adj) as int64 arrays. A +1 at
    (i, j) is a treatment win iff i is on treatment and j on control; it
    counts toward t_adj at both endpoints.
    """
    pos = entries == 1
    indegree = pos.sum(axis=0, dtype=np.int64)
    outdegree = pos.sum(axis=1, dtype=np.int64)
    treat = arms.astype(bool)
    ctrl = ~treat
    t_edge = pos & np.outer(treat, ctrl)
    c_edge = pos & np.outer(ctrl, treat)
    t_adj = t_edge.sum(axis=1, dtype=np.int64) + t_edge.sum(axis=0, dtype=np.int64)
    c_adj = c_edge.sum(axis=1, dtype=np.int64) + c_edge.sum(axis=0, dtype=np.int64)
    return indegree, outdegree, t_adj, c_adj


def first_violation(entries: np.ndarray):
    """Row-major index of the first skew or value-domain violation, or None."""
    bad = (entries != -entries.T) | (entries < -1) | (entries > 1)
    flat = np.flatnonzero(bad)
    if flat.size == 0:
        return None
    i, j = divmod(int(flat[0]), entries.shape[1])
    return i, j
