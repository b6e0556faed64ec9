"""Shared result containers for the moment engines and the oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

import numpy as np

Scalar = Union[float, Fraction]


def _div(num: int, den: int, exact: bool) -> Scalar:
    """Exact or floating division, the single switch between the two modes."""
    return Fraction(num, den) if exact else num / den


class Method(str, Enum):
    """Which distributional engine produced a set of moments."""

    PERMUTATION = "permutation"
    BOOTSTRAP_TWO_SAMPLE = "bootstrap_two_sample"
    ORACLE_PERMUTATION = "oracle_permutation"
    ORACLE_BOOTSTRAP = "oracle_bootstrap"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True, slots=True, eq=False)
class WinMoments:
    """Mean and covariance of the win counts (W_T, W_C).

    ``cov`` is a 2x2 array ordered [W_T, W_C]; float64 in float mode,
    object dtype holding Fractions in exact mode. Monte Carlo runs with a
    single repetition report a NaN covariance (flagged, not fabricated).
    """

    method: Method
    exp_t: Scalar
    exp_c: Scalar
    cov: np.ndarray
    exp_diff: Scalar
    var_diff: Scalar

    @classmethod
    def from_parts(cls, method: Method, exp_t: Scalar, exp_c: Scalar, cov: np.ndarray) -> "WinMoments":
        cov = np.asarray(cov)
        if cov.shape != (2, 2):
            raise ValueError(f"covariance must be 2x2, got {cov.shape}")
        exp_diff = exp_t - exp_c
        var_diff = cov[0, 0] - 2 * cov[0, 1] + cov[1, 1]
        return cls(method, exp_t, exp_c, cov, exp_diff, var_diff)

    @property
    def exact(self) -> bool:
        return isinstance(self.exp_t, Fraction)

    def as_float(self) -> "WinMoments":
        """Same moments with every entry converted to float64."""
        return WinMoments(
            self.method,
            float(self.exp_t),
            float(self.exp_c),
            np.asarray(self.cov, dtype=np.float64),
            float(self.exp_diff),
            float(self.var_diff),
        )

    def validate(self, tol: float = 1e-9) -> None:
        """Check symmetry, nonnegative diagonal and PSD up to tol * scale.

        Skipped for flagged (NaN) covariances.
        """
        c = np.asarray(self.cov, dtype=np.float64)
        if np.isnan(c).any():
            return
        scale = max(1.0, float(np.abs(c).max()))
        if abs(c[0, 1] - c[1, 0]) > tol * scale:
            raise ValueError(f"covariance not symmetric: {c[0, 1]} vs {c[1, 0]}")
        if c[0, 0] < -tol * scale or c[1, 1] < -tol * scale:
            raise ValueError(f"negative variance on the diagonal: {c.diagonal()}")
        det = c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0]
        if det < -tol * scale * scale:
            raise ValueError(f"covariance not PSD: det = {det}")
        vd = c[0, 0] - 2 * c[0, 1] + c[1, 1]
        if not math.isclose(vd, float(self.var_diff), rel_tol=1e-9, abs_tol=1e-9 * scale):
            raise ValueError(f"var_diff {self.var_diff} inconsistent with covariance ({vd})")
