"""Pairwise hierarchical comparison and outcome-matrix construction.

Every patient is compared to every other patient on an ordered list of
measures; the first measure with a non-zero verdict decides the pair.
The verdicts form a skew N x N matrix over {-1, 0, +1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from ._kernels import first_violation
from .errors import InputError, MatrixInvalidError, ShapeError

TREATMENT = 1
CONTROL = 0


class Kind(str, Enum):
    TIME_TO_EVENT = "time_to_event"
    CONTINUOUS = "continuous"
    ORDINAL = "ordinal"
    BINARY = "binary"


class Direction(str, Enum):
    HIGHER_BETTER = "higher_better"
    LOWER_BETTER = "lower_better"


# Kinds for which a non-zero comparison threshold is meaningful.
_THRESHOLD_KINDS = (Kind.CONTINUOUS, Kind.ORDINAL)


@dataclass(frozen=True, slots=True)
class MeasureSpec:
    """One level of the comparison hierarchy."""

    name: str
    kind: Kind
    direction: Direction = Direction.HIGHER_BETTER
    threshold: float = 0.0
    position: int = 0


class MeasureValue(NamedTuple):
    """One measurement: the value (None when missing) and a censoring flag."""

    value: Optional[float]
    censored: bool = False


@dataclass(frozen=True, slots=True)
class PatientRecord:
    """One patient: id, arm (1 treatment / 0 control), per-measure values."""

    id: str
    arm: int
    values: tuple[MeasureValue, ...]


@dataclass(frozen=True, slots=True, eq=False)
class OutcomeMatrix:
    """Skew matrix of pairwise verdicts; entries[i][j] = +1 means i beat j."""

    entries: np.ndarray

    @property
    def n_patients(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_entries(cls, entries, validate: bool = True) -> "OutcomeMatrix":
        arr = np.ascontiguousarray(entries, dtype=np.int8)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeError(f"outcome matrix must be square, got shape {arr.shape}")
        if validate:
            hit = first_violation(arr)
            if hit is not None:
                i, j = hit
                v, w = int(arr[i, j]), int(arr[j, i])
                if v < -1 or v > 1:
                    raise MatrixInvalidError(i, j, f"entry u[{i}][{j}] = {v} is outside {{-1, 0, 1}}")
                raise MatrixInvalidError(i, j, f"matrix is not skew at ({i}, {j}): u[{i}][{j}] = {v} but u[{j}][{i}] = {w}")
        arr.setflags(write=False)
        return cls(arr)


def validate_hierarchy(hierarchy: Sequence[MeasureSpec]) -> None:
    """Reject hierarchies with bad positions, names or thresholds."""
    if len(hierarchy) == 0:
        raise InputError("hierarchy must contain at least one measure")
    names = [h.name for h in hierarchy]
    if len(set(names)) != len(names):
        raise InputError(f"duplicate measure names in hierarchy: {names}")
    for idx, spec in enumerate(hierarchy):
        if spec.position != idx:
            raise InputError(
                f"measure {spec.name!r} has position {spec.position}, expected {idx}: "
                "positions must be distinct and contiguous from 0"
            )
        if not (spec.threshold >= 0 and math.isfinite(spec.threshold)):
            raise InputError(f"measure {spec.name!r} has invalid threshold {spec.threshold}")
        if spec.threshold > 0 and spec.kind not in _THRESHOLD_KINDS:
            raise InputError(f"measure {spec.name!r}: threshold is only meaningful for continuous or ordinal kinds")


def validate_record(rec: PatientRecord, hierarchy: Sequence[MeasureSpec]) -> None:
    """Reject records whose entries do not conform to the hierarchy."""
    if len(rec.values) != len(hierarchy):
        raise ShapeError(f"record {rec.id!r} carries {len(rec.values)} values for a {len(hierarchy)}-measure hierarchy")
    if rec.arm not in (TREATMENT, CONTROL):
        raise InputError(f"record {rec.id!r} has arm {rec.arm!r}, expected 1 (treatment) or 0 (control)")
    for spec, mv in zip(hierarchy, rec.values):
        if mv.censored and spec.kind is not Kind.TIME_TO_EVENT:
            raise InputError(f"record {rec.id!r}: censoring flag on non time-to-event measure {spec.name!r}")
        if mv.value is not None and not math.isfinite(mv.value):
            raise InputError(f"record {rec.id!r}: non-finite value for measure {spec.name!r}")
        if mv.value is not None and spec.kind is Kind.BINARY and mv.value not in (0.0, 1.0):
            raise InputError(f"record {rec.id!r}: binary measure {spec.name!r} has value {mv.value}, expected 0 or 1")


def _tte_score(a: MeasureValue, b: MeasureValue) -> int:
    # Gehan rule with longer time better. "Censored at t" means the event
    # happens at or after t, so a censored time at or past an opponent's
    # event time is a win; an event can never beat a censored opponent.
    if not a.censored and not b.censored:
        if a.value > b.value:
            return 1
        if a.value < b.value:
            return -1
        return 0
    if a.censored and not b.censored:
        return 1 if a.value >= b.value else 0
    if not a.censored and b.censored:
        return -1 if b.value >= a.value else 0
    return 0


def _score_one(spec: MeasureSpec, a: MeasureValue, b: MeasureValue) -> int:
    """Verdict of a single measure, +1 when a wins; 0 defers to the next."""
    if a.value is None or b.value is None:
        return 0
    if spec.kind is Kind.TIME_TO_EVENT:
        s = _tte_score(a, b)
        return -s if spec.direction is Direction.LOWER_BETTER else s
    diff = a.value - b.value
    if spec.direction is Direction.LOWER_BETTER:
        diff = -diff
    if diff > spec.threshold:
        return 1
    if diff < -spec.threshold:
        return -1
    return 0


def compare_pair(rec_i: PatientRecord, rec_j: PatientRecord, hierarchy: Sequence[MeasureSpec]) -> int:
    """First non-zero verdict across the hierarchy, +1 when rec_i wins."""
    if len(rec_i.values) != len(hierarchy) or len(rec_j.values) != len(hierarchy):
        raise ShapeError(
            f"records carry {len(rec_i.values)} and {len(rec_j.values)} values "
            f"for a {len(hierarchy)}-measure hierarchy"
        )
    for spec, a, b in zip(hierarchy, rec_i.values, rec_j.values):
        s = _score_one(spec, a, b)
        if s:
            return s
    return 0


def _tte_matrix(t: np.ndarray, censored: np.ndarray) -> np.ndarray:
    present = ~np.isnan(t)
    ev = present & ~censored
    cn = present & censored
    tc = t[:, None]
    tr = t[None, :]
    v = np.zeros((t.size, t.size), dtype=np.int8)
    both = ev[:, None] & ev[None, :]
    with np.errstate(invalid="ignore"):
        v[both & (tc > tr)] = 1
        v[both & (tc < tr)] = -1
        ic = cn[:, None] & ev[None, :]
        v[ic & (tc >= tr)] = 1
        ce = ev[:, None] & cn[None, :]
        v[ce & (tr >= tc)] = -1
    return v


def _verdict_matrix(spec: MeasureSpec, values: np.ndarray, censored: np.ndarray) -> np.ndarray:
    if spec.kind is Kind.TIME_TO_EVENT:
        v = _tte_matrix(values, censored)
        return -v if spec.direction is Direction.LOWER_BETTER else v
    w = -values if spec.direction is Direction.LOWER_BETTER else values
    diff = w[:, None] - w[None, :]
    with np.errstate(invalid="ignore"):
        v = (diff > spec.threshold).astype(np.int8) - (diff < -spec.threshold).astype(np.int8)
    return v


def build_outcome_matrix(records: Sequence[PatientRecord], hierarchy: Sequence[MeasureSpec]) -> OutcomeMatrix:
    """Compare every pair of records and assemble the outcome matrix."""
    validate_hierarchy(hierarchy)
    if len(records) < 2:
        raise InputError(f"need at least 2 records, got {len(records)}")
    seen: set[str] = set()
    for rec in records:
        if rec.id in seen:
            raise InputError(f"duplicate patient id {rec.id!r}")
        seen.add(rec.id)
        validate_record(rec, hierarchy)

    n = len(records)
    combined = np.zeros((n, n), dtype=np.int8)
    for k, spec in enumerate(hierarchy):
        values = np.array(
            [math.nan if r.values[k].value is None else r.values[k].value for r in records],
            dtype=np.float64,
        )
        censored = np.array([r.values[k].censored for r in records], dtype=bool)
        v = _verdict_matrix(spec, values, censored)
        combined = np.where(combined == 0, v, combined)
    np.fill_diagonal(combined, 0)
    return OutcomeMatrix.from_entries(combined, validate=False)
