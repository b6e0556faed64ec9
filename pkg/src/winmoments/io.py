"""File formats: outcome matrix, arm assignment, patient CSV, hierarchy JSON.

Matrix file: first line N, then N lines of N space-separated entries
from {-1, 0, 1}. Arms file: one line of N space-separated labels, 1 for
treatment and 0 for control. Patient data: CSV with header
``id,arm`` followed by one column per measure (hierarchy order) and an
optional ``<name>_censored`` column directly after a time-to-event
measure. Hierarchy: a JSON array of measure objects in hierarchy order.
"""

from __future__ import annotations

import csv
import json
import math
from typing import Sequence

import numpy as np

from .errors import InputError
from .graph import ArmAssignment
from .outcome import (
    Direction,
    Kind,
    MeasureSpec,
    MeasureValue,
    OutcomeMatrix,
    PatientRecord,
    validate_hierarchy,
)

# ---------------------------------------------------------------------------
# outcome matrix

_MATRIX_TOKENS = {"-1": -1, "0": 0, "1": 1, "+1": 1}


def format_matrix(u: OutcomeMatrix) -> str:
    lines = [str(u.n_patients)]
    for row in u.entries:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> OutcomeMatrix:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise InputError("matrix file is empty")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise InputError(f"line 1: expected the patient count, got {lines[0].strip()!r}") from None
    if n < 1:
        raise InputError(f"line 1: patient count must be positive, got {n}")
    if len(lines) - 1 != n:
        raise InputError(f"expected {n} matrix rows after the header line, found {len(lines) - 1}")
    entries = np.zeros((n, n), dtype=np.int8)
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != n:
            raise InputError(f"line {i + 2}: expected {n} entries, found {len(tokens)}")
        for j, tok in enumerate(tokens):
            try:
                entries[i, j] = _MATRIX_TOKENS[tok]
            except KeyError:
                raise InputError(f"line {i + 2}, column {j + 1}: invalid entry {tok!r}") from None
    return OutcomeMatrix.from_entries(entries)


def read_matrix(path: str) -> OutcomeMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path: str, u: OutcomeMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(u))


# ---------------------------------------------------------------------------
# arm assignment

def format_arms(arms: ArmAssignment) -> str:
    return " ".join(str(int(a)) for a in arms.arms) + "\n"


def parse_arms(text: str) -> ArmAssignment:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("arms file is empty")
    if len(lines) > 1:
        raise InputError(f"arms file must hold a single line, found {len(lines)}")
    labels = []
    for j, tok in enumerate(lines[0].split()):
        if tok not in ("0", "1"):
            raise InputError(f"arms column {j + 1}: invalid label {tok!r}, expected 0 or 1")
        labels.append(int(tok))
    return ArmAssignment(labels)


def read_arms(path: str) -> ArmAssignment:
    with open(path, encoding="utf-8") as fh:
        return parse_arms(fh.read())


def write_arms(path: str, arms: ArmAssignment) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_arms(arms))


# ---------------------------------------------------------------------------
# hierarchy config

_HIERARCHY_KEYS = {"name", "kind", "direction", "threshold"}


def parse_hierarchy(text: str) -> tuple[MeasureSpec, ...]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"hierarchy file is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise InputError("hierarchy file must hold a JSON array of measure objects")
    measures = []
    for idx, obj in enumerate(data):
        if not isinstance(obj, dict):
            raise InputError(f"hierarchy entry {idx}: expected an object, got {type(obj).__name__}")
        unknown = set(obj) - _HIERARCHY_KEYS
        if unknown:
            raise InputError(f"hierarchy entry {idx}: unknown keys {sorted(unknown)}")
        if "name" not in obj or "kind" not in obj:
            raise InputError(f"hierarchy entry {idx}: 'name' and 'kind' are required")
        name = obj["name"]
        if not isinstance(name, str) or not name:
            raise InputError(f"hierarchy entry {idx}: 'name' must be a non-empty string")
        try:
            kind = Kind(obj["kind"])
        except ValueError:
            raise InputError(
                f"hierarchy entry {idx}: unknown kind {obj['kind']!r}, "
                f"expected one of {[k.value for k in Kind]}"
            ) from None
        try:
            direction = Direction(obj.get("direction", Direction.HIGHER_BETTER.value))
        except ValueError:
            raise InputError(
                f"hierarchy entry {idx}: unknown direction {obj['direction']!r}, "
                f"expected one of {[d.value for d in Direction]}"
            ) from None
        threshold = obj.get("threshold", 0.0)
        if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
            raise InputError(f"hierarchy entry {idx}: threshold must be a number")
        measures.append(MeasureSpec(name, kind, direction, float(threshold), position=idx))
    hierarchy = tuple(measures)
    validate_hierarchy(hierarchy)
    return hierarchy


def read_hierarchy(path: str) -> tuple[MeasureSpec, ...]:
    with open(path, encoding="utf-8") as fh:
        return parse_hierarchy(fh.read())


# ---------------------------------------------------------------------------
# patient records

def _expected_header(hierarchy: Sequence[MeasureSpec], header: Sequence[str]) -> dict[str, int | None]:
    """Map each measure to its censored-column index, validating the layout."""
    if len(header) < 2 or header[0] != "id" or header[1] != "arm":
        raise InputError(f"CSV header must start with 'id,arm', got {header[:2]}")
    censor_col: dict[str, int | None] = {}
    col = 2
    for spec in hierarchy:
        if col >= len(header) or header[col] != spec.name:
            found = header[col] if col < len(header) else "<end of header>"
            raise InputError(f"CSV column {col + 1}: expected measure {spec.name!r}, found {found!r}")
        col += 1
        cname = f"{spec.name}_censored"
        if col < len(header) and header[col] == cname:
            if spec.kind is not Kind.TIME_TO_EVENT:
                raise InputError(f"CSV column {col + 1}: censoring column for non time-to-event measure {spec.name!r}")
            censor_col[spec.name] = col
            col += 1
        else:
            censor_col[spec.name] = None
    if col != len(header):
        raise InputError(f"CSV has unexpected trailing columns: {list(header[col:])}")
    return censor_col


def read_records(path: str, hierarchy: Sequence[MeasureSpec]) -> list[PatientRecord]:
    validate_hierarchy(hierarchy)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InputError("data file is empty")
    header = [cell.strip() for cell in rows[0]]
    censor_col = _expected_header(hierarchy, header)

    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(f"data line {lineno}: expected {len(header)} cells, found {len(row)}")
        cells = [cell.strip() for cell in row]
        pid = cells[0]
        if not pid:
            raise InputError(f"data line {lineno}: empty patient id")
        if cells[1] not in ("0", "1"):
            raise InputError(f"data line {lineno}: arm must be 1 (treatment) or 0 (control), got {cells[1]!r}")
        arm = int(cells[1])
        values = []
        col = 2
        for spec in hierarchy:
            raw = cells[col]
            col += 1
            if raw == "":
                value = None
            else:
                try:
                    value = float(raw)
                except ValueError:
                    raise InputError(f"data line {lineno}, column {col}: invalid number {raw!r}") from None
                if not math.isfinite(value):
                    raise InputError(f"data line {lineno}, column {col}: non-finite value {raw!r}")
            censored = False
            if censor_col[spec.name] is not None:
                craw = cells[col]
                col += 1
                if craw not in ("", "0", "1"):
                    raise InputError(f"data line {lineno}, column {col}: censoring flag must be 0 or 1, got {craw!r}")
                censored = craw == "1"
            values.append(MeasureValue(value, censored))
        records.append(PatientRecord(pid, arm, tuple(values)))
    if not records:
        raise InputError("data file has a header but no patient rows")
    return records
