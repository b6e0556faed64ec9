"""Closed-form win-count moments under random arm permutation, plus the
hierarchical score test.

The permutation distribution assigns m of the N patients to treatment
uniformly at random. Means and covariances of (W_T, W_C) follow from
counting ordered pairs of win edges by how they intersect; everything
after the O(N^2) graph summary is O(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import DegenerateDesignError, ShapeError
from .graph import ArmAssignment, GraphSummary
from .outcome import OutcomeMatrix
from .results import Method, WinMoments, _div


@dataclass(frozen=True, slots=True)
class PermCaseCounts:
    """Ordered edge-pair tallies grouped by how the two edges intersect.

    same_edge counts pairs (e, e); shared_head / shared_tail count distinct
    ordered pairs meeting head-to-head / tail-to-tail; head_to_tail counts
    pairs where one edge enters the shared vertex and the other leaves it
    (per orientation, so it enters f_p twice). The remaining
    e_squared - f_p ordered pairs are vertex-disjoint.
    """

    same_edge: int
    shared_head: int
    shared_tail: int
    head_to_tail: int
    f_p: int
    e_squared: int

    @property
    def disjoint(self) -> int:
        return self.e_squared - self.f_p


@dataclass(frozen=True, slots=True, eq=False)
class FsResult:
    """Score test: net pairwise score summed over treatment patients."""

    scores: np.ndarray
    fs: int
    variance: Union[float, Fraction]
    z: Optional[float]
    p_two_sided: Optional[float]


def permutation_moments(
    summary: GraphSummary, m: int, n: int, exact: bool = False
) -> tuple[WinMoments, PermCaseCounts]:
    """Exact mean and covariance of (W_T, W_C) over all C(N, m) assignments.

    m and n may differ from the observed split; only the degree counts of
    the summary are used, never the observed win totals.
    """
    if m < 1 or n < 1:
        raise DegenerateDesignError(f"both arms must be non-empty (m={m}, n={n})")
    big_n = summary.n_patients
    if m + n != big_n:
        raise ShapeError(f"m + n = {m + n} does not match the {big_n}-patient matrix")

    ind = summary.indegree
    out = summary.outdegree
    e = summary.total_edges
    same_edge = e
    shared_head = int(np.sum(ind * (ind - 1)))
    shared_tail = int(np.sum(out * (out - 1)))
    head_to_tail = int(np.sum(ind * out))
    f_p = same_edge + shared_head + shared_tail + 2 * head_to_tail
    disjoint = e * e - f_p

    f0 = _div(m * n, big_n * (big_n - 1), exact)
    exp = e * f0
    m_tt = same_edge * f0
    m_cc = same_edge * f0
    m_tc = 0 * f0
    # zero tallies are skipped so the small-N denominators are never formed
    if shared_head or shared_tail or head_to_tail:
        f_m = _div(m * n * (m - 1), big_n * (big_n - 1) * (big_n - 2), exact)
        f_n = _div(m * n * (n - 1), big_n * (big_n - 1) * (big_n - 2), exact)
        m_tt = m_tt + shared_head * f_m + shared_tail * f_n
        m_cc = m_cc + shared_head * f_n + shared_tail * f_m
        m_tc = m_tc + head_to_tail * (f_m + f_n)
    if disjoint:
        f_d = _div(
            m * n * (m - 1) * (n - 1),
            big_n * (big_n - 1) * (big_n - 2) * (big_n - 3),
            exact,
        )
        m_tt = m_tt + disjoint * f_d
        m_cc = m_cc + disjoint * f_d
        m_tc = m_tc + disjoint * f_d

    sq = exp * exp
    dtype = object if exact else np.float64
    cov = np.array([[m_tt - sq, m_tc - sq], [m_tc - sq, m_cc - sq]], dtype=dtype)
    moments = WinMoments.from_parts(Method.PERMUTATION, exp, exp, cov)
    counts = PermCaseCounts(same_edge, shared_head, shared_tail, head_to_tail, f_p, e * e)
    return moments, counts


def fs_test(u: OutcomeMatrix, arms: ArmAssignment, exact: bool = False) -> FsResult:
    """Score test statistic, its permutation variance, z and two-sided p.

    The statistic is the sum over treatment patients of their net pairwise
    scores; within-arm comparisons cancel, so it equals W_T - W_C.
    """
    if arms.n_patients != u.n_patients:
        raise ShapeError(f"arm assignment has {arms.n_patients} entries for a {u.n_patients}-patient matrix")
    scores = u.entries.sum(axis=1, dtype=np.int64)
    fs = int(scores[arms.arms == 1].sum())
    ssq = int(np.sum(scores * scores))
    m, n = arms.m, arms.n
    big_n = arms.n_patients
    variance = _div(m * n * ssq, big_n * (big_n - 1), exact)
    if ssq == 0:
        z = None
        p = None
    else:
        z = fs / math.sqrt(variance)
        p = math.erfc(abs(z) / math.sqrt(2.0))
    scores.setflags(write=False)
    return FsResult(scores, fs, variance, z, p)
