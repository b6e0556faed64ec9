"""Closed-form win-count moments under the two-sample bootstrap.

Each bootstrap sample redraws m patients with replacement from the
treatment arm and n from the control arm, all m^m * n^n draws equally
likely. Only cross-arm win edges matter: a win edge contributes the
product of its endpoint multiplicities, so the moments reduce to
per-vertex tallies of adjacent win edges plus a disjoint-pair remainder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDesignError, ShapeError
from .graph import GraphSummary
from .results import Method, WinMoments, _div


@dataclass(frozen=True, slots=True)
class BootCaseCounts:
    """Ordered win-edge pair tallies split by the vertex where they meet.

    tt_edge_* and cc_edge_* are same-edge tallies summed over vertices of
    one arm; each win edge has one endpoint in each arm, so the grand
    totals are 2 * W_T and 2 * W_C and the assembly halves them.
    tt_pair_* / cc_pair_* / tc_pair_* count ordered pairs of distinct
    adjacent edges at treatment (_t) or control (_c) vertices. rem_*
    count the vertex-disjoint ordered pairs.
    """

    tt_edge_t: int
    cc_edge_t: int
    tt_pair_t: int
    cc_pair_t: int
    tc_pair_t: int
    tt_edge_c: int
    cc_edge_c: int
    tt_pair_c: int
    cc_pair_c: int
    tc_pair_c: int
    rem_tt: int
    rem_tc: int
    rem_ct: int
    rem_cc: int


def bootstrap_moments(
    summary: GraphSummary, m: int, n: int, exact: bool = False
) -> tuple[WinMoments, BootCaseCounts]:
    """Exact mean and covariance of (W_T, W_C) over all m^m * n^n samples."""
    if m < 1 or n < 1:
        raise DegenerateDesignError(f"both arms must be non-empty (m={m}, n={n})")
    if m != summary.m or n != summary.n:
        raise ShapeError(
            f"(m, n) = ({m}, {n}) does not match the summarized assignment "
            f"({summary.m}, {summary.n})"
        )

    treat = summary.arms.arms == 1
    t_adj = summary.t_adj
    c_adj = summary.c_adj
    w_t = summary.observed_t_wins
    w_c = summary.observed_c_wins

    def tallies(mask: np.ndarray) -> tuple[int, int, int, int, int]:
        t = t_adj[mask]
        c = c_adj[mask]
        return (
            int(t.sum()),
            int(c.sum()),
            int(np.sum(t * (t - 1))),
            int(np.sum(c * (c - 1))),
            int(np.sum(t * c)),
        )

    tt_edge_t, cc_edge_t, tt_pair_t, cc_pair_t, tc_pair_t = tallies(treat)
    tt_edge_c, cc_edge_c, tt_pair_c, cc_pair_c, tc_pair_c = tallies(~treat)

    rem_tt = w_t * (w_t - 1) - (tt_pair_t + tt_pair_c)
    rem_cc = w_c * (w_c - 1) - (cc_pair_t + cc_pair_c)
    rem_tc = w_t * w_c - (tc_pair_t + tc_pair_c)
    rem_ct = rem_tc

    # same-edge tallies are doubled (seen at both endpoints); the factor
    # absorbs the halving so every accumulation stays integral
    f_same_half = _div((2 * m - 1) * (2 * n - 1), 2 * m * n, exact)
    f_meet_t = _div((2 * m - 1) * (n - 1), m * n, exact)
    f_meet_c = _div((m - 1) * (2 * n - 1), m * n, exact)
    f_disjoint = _div((m - 1) * (n - 1), m * n, exact)

    m_tt = (
        (tt_edge_t + tt_edge_c) * f_same_half
        + tt_pair_t * f_meet_t
        + tt_pair_c * f_meet_c
        + rem_tt * f_disjoint
    )
    m_cc = (
        (cc_edge_t + cc_edge_c) * f_same_half
        + cc_pair_t * f_meet_t
        + cc_pair_c * f_meet_c
        + rem_cc * f_disjoint
    )
    m_tc = tc_pair_t * f_meet_t + tc_pair_c * f_meet_c + rem_tc * f_disjoint

    one = _div(1, 1, exact)
    exp_t = w_t * one
    exp_c = w_c * one
    dtype = object if exact else np.float64
    cov = np.array(
        [[m_tt - w_t * w_t * one, m_tc - w_t * w_c * one],
         [m_tc - w_t * w_c * one, m_cc - w_c * w_c * one]],
        dtype=dtype,
    )
    moments = WinMoments.from_parts(Method.BOOTSTRAP_TWO_SAMPLE, exp_t, exp_c, cov)
    counts = BootCaseCounts(
        tt_edge_t, cc_edge_t, tt_pair_t, cc_pair_t, tc_pair_t,
        tt_edge_c, cc_edge_c, tt_pair_c, cc_pair_c, tc_pair_c,
        rem_tt, rem_tc, rem_ct, rem_cc,
    )
    return moments, counts
