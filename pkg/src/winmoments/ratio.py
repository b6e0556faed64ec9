"""Win-ratio point estimate and log-scale standard errors.

Two standard errors for ln(W_T / W_C): backing the SE out of the score
test z (Pocock), and first-order delta propagation of the two-sample
bootstrap covariance. Undefined quantities are reported as None, never
substituted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Optional

from .errors import InputError, RatioUndefinedError
from .graph import GraphSummary
from .perm import FsResult
from .results import WinMoments


@dataclass(frozen=True, slots=True)
class WinRatioResult:
    """Observed win ratio with log-scale standard errors and intervals."""

    r_w: float
    log_rw: float
    se_pocock: Optional[float]
    se_delta: Optional[float]
    ci_level: float
    ci_pocock: Optional[tuple[float, float]]
    ci_delta: Optional[tuple[float, float]]


def win_ratio(
    summary: GraphSummary, fs: FsResult, boot: WinMoments, ci_level: float = 0.95
) -> WinRatioResult:
    """Ratio of observed win totals with standard errors on the log scale."""
    if not 0.0 < ci_level < 1.0:
        raise InputError(f"ci_level must lie strictly between 0 and 1, got {ci_level}")
    w_t = summary.observed_t_wins
    w_c = summary.observed_c_wins
    if w_t == 0 or w_c == 0:
        raise RatioUndefinedError(f"win ratio undefined: observed wins are ({w_t}, {w_c})")

    r_w = w_t / w_c
    log_rw = math.log(r_w)

    # fs and log_rw always share a sign (fs equals W_T - W_C), so the
    # backed-out SE is positive whenever it is defined
    if fs.z is None or fs.z == 0.0 or log_rw == 0.0:
        se_pocock = None
    else:
        se_pocock = log_rw / fs.z

    var_t = float(boot.cov[0, 0])
    var_c = float(boot.cov[1, 1])
    cov_tc = float(boot.cov[0, 1])
    inner = var_t / w_t**2 - 2.0 * cov_tc / (w_t * w_c) + var_c / w_c**2
    se_delta = math.sqrt(max(inner, 0.0))

    q = NormalDist().inv_cdf(1.0 - (1.0 - ci_level) / 2.0)

    def interval(se: Optional[float]) -> Optional[tuple[float, float]]:
        if se is None:
            return None
        return math.exp(log_rw - q * se), math.exp(log_rw + q * se)

    return WinRatioResult(
        r_w,
        log_rw,
        se_pocock,
        se_delta,
        ci_level,
        interval(se_pocock),
        interval(se_delta),
    )
