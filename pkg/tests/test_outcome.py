"""Pairwise comparison rules and outcome-matrix construction."""

import numpy as np
import pytest

from winmoments import (
    Direction,
    InputError,
    Kind,
    MatrixInvalidError,
    MeasureSpec,
    MeasureValue,
    OutcomeMatrix,
    PatientRecord,
    ShapeError,
    build_outcome_matrix,
    compare_pair,
    validate_hierarchy,
    validate_record,
)
from winmoments.io import format_matrix, read_hierarchy, read_records

from conftest import DATA_DIR, FIVE_ARMS, FIVE_ENTRIES


def tte(name="t", direction=Direction.HIGHER_BETTER, position=0):
    return MeasureSpec(name, Kind.TIME_TO_EVENT, direction, 0.0, position)


def cont(name="x", threshold=0.0, direction=Direction.HIGHER_BETTER, position=0):
    return MeasureSpec(name, Kind.CONTINUOUS, direction, threshold, position)


def rec(arm, *values):
    vals = tuple(
        v if isinstance(v, MeasureValue) else MeasureValue(float(v)) for v in values
    )
    return PatientRecord(f"p{arm}", arm, vals)


def censored(t):
    return MeasureValue(float(t), censored=True)


def missing():
    return MeasureValue(None)


class TestTimeToEvent:
    H = [tte()]

    def cmp(self, a, b):
        return compare_pair(rec(1, a), rec(0, b), self.H)

    def test_both_events_compare_times(self):
        assert self.cmp(5, 3) == 1
        assert self.cmp(3, 5) == -1
        assert self.cmp(4, 4) == 0

    def test_censored_at_or_after_event_wins(self):
        assert self.cmp(censored(5), 3) == 1
        assert self.cmp(censored(3), 3) == 1
        assert self.cmp(3, censored(3)) == -1
        assert self.cmp(3, censored(5)) == -1

    def test_event_never_beats_later_censoring_window(self):
        # censoring before the other event time leaves the order unknown
        assert self.cmp(censored(2), 3) == 0
        assert self.cmp(3, censored(2)) == 0

    def test_both_censored_is_a_tie(self):
        assert self.cmp(censored(1), censored(9)) == 0

    def test_lower_better_flips_the_verdict(self):
        h = [tte(direction=Direction.LOWER_BETTER)]
        assert compare_pair(rec(1, 3), rec(0, 5), h) == 1
        assert compare_pair(rec(1, censored(3)), rec(0, 3), h) == -1


class TestThresholded:
    def test_strictly_beyond_threshold_wins(self):
        h = [cont(threshold=10.0)]
        assert compare_pair(rec(1, 21), rec(0, 10), h) == 1
        assert compare_pair(rec(1, 20), rec(0, 10), h) == 0
        assert compare_pair(rec(1, 10), rec(0, 21), h) == -1

    def test_zero_threshold_is_a_plain_comparison(self):
        h = [cont()]
        assert compare_pair(rec(1, 1.0), rec(0, 0.999), h) == 1
        assert compare_pair(rec(1, 1.0), rec(0, 1.0), h) == 0

    def test_lower_better(self):
        h = [cont(direction=Direction.LOWER_BETTER, threshold=2.0)]
        assert compare_pair(rec(1, 1.0), rec(0, 4.0), h) == 1
        assert compare_pair(rec(1, 1.0), rec(0, 3.0), h) == 0

    def test_ordinal_and_binary_follow_the_same_rule(self):
        h = [MeasureSpec("o", Kind.ORDINAL, Direction.HIGHER_BETTER, 1.0, 0)]
        assert compare_pair(rec(1, 3), rec(0, 1), h) == 1
        assert compare_pair(rec(1, 2), rec(0, 1), h) == 0
        hb = [MeasureSpec("b", Kind.BINARY, Direction.HIGHER_BETTER, 0.0, 0)]
        assert compare_pair(rec(1, 1), rec(0, 0), hb) == 1
        assert compare_pair(rec(1, 0), rec(0, 1), hb) == -1


class TestHierarchy:
    def test_first_decisive_measure_wins(self):
        h = [cont("a", position=0), cont("b", position=1)]
        assert compare_pair(rec(1, 5, 0), rec(0, 3, 9), h) == 1
        assert compare_pair(rec(1, 3, 9), rec(0, 3, 0), h) == 1

    def test_missing_value_defers_to_the_next_measure(self):
        h = [cont("a", position=0), cont("b", position=1)]
        assert compare_pair(rec(1, missing(), 9), rec(0, 3, 0), h) == 1
        assert compare_pair(rec(1, 9, missing()), rec(0, missing(), 0), h) == 0

    def test_all_ties_gives_zero(self):
        h = [cont("a", position=0), cont("b", position=1)]
        assert compare_pair(rec(1, 1, 2), rec(0, 1, 2), h) == 0

    def test_antisymmetry_on_random_records(self):
        rng = np.random.default_rng(11)
        h = [
            tte("t", position=0),
            cont("x", threshold=0.5, position=1),
            MeasureSpec("b", Kind.BINARY, Direction.LOWER_BETTER, 0.0, 2),
        ]
        for _ in range(500):
            def draw(arm):
                t = MeasureValue(float(rng.integers(0, 6)), bool(rng.integers(0, 2)))
                x = missing() if rng.random() < 0.2 else MeasureValue(float(rng.normal()))
                b = MeasureValue(float(rng.integers(0, 2)))
                return PatientRecord("r", arm, (t, x, b))

            a, b = draw(1), draw(0)
            assert compare_pair(a, b, h) == -compare_pair(b, a, h)

    def test_length_mismatch_raises(self):
        h = [cont("a", position=0), cont("b", position=1)]
        with pytest.raises(ShapeError):
            compare_pair(rec(1, 1), rec(0, 1, 2), h)


class TestValidation:
    def test_hierarchy_must_be_nonempty_with_distinct_names(self):
        with pytest.raises(InputError):
            validate_hierarchy([])
        with pytest.raises(InputError):
            validate_hierarchy([cont("a", position=0), cont("a", position=1)])

    def test_positions_must_match_order(self):
        with pytest.raises(InputError):
            validate_hierarchy([cont("a", position=1)])

    def test_threshold_rules(self):
        with pytest.raises(InputError):
            validate_hierarchy([cont("a", threshold=-1.0)])
        with pytest.raises(InputError):
            validate_hierarchy(
                [MeasureSpec("t", Kind.TIME_TO_EVENT, Direction.HIGHER_BETTER, 2.0, 0)]
            )
        with pytest.raises(InputError):
            validate_hierarchy(
                [MeasureSpec("b", Kind.BINARY, Direction.HIGHER_BETTER, 1.0, 0)]
            )

    def test_record_validation(self):
        h = [tte("t", position=0), cont("x", position=1)]
        with pytest.raises(InputError):
            validate_record(rec(2, 1, 1), h)
        with pytest.raises(ShapeError):
            validate_record(rec(1, 1), h)
        with pytest.raises(InputError):
            validate_record(rec(1, 1, censored(2)), h)  # censored non-tte value
        with pytest.raises(InputError):
            validate_record(rec(1, float("inf"), 1), h)
        hb = [MeasureSpec("b", Kind.BINARY, Direction.HIGHER_BETTER, 0.0, 0)]
        with pytest.raises(InputError):
            validate_record(rec(1, 0.5), hb)


class TestMatrix:
    def test_entries_are_validated(self):
        with pytest.raises(MatrixInvalidError) as e:
            OutcomeMatrix.from_entries([[0, 2], [-2, 0]])
        assert "(0, 1)" in str(e.value) or "u[0][1]" in str(e.value)
        with pytest.raises(MatrixInvalidError):
            OutcomeMatrix.from_entries([[0, 1], [1, 0]])
        with pytest.raises(MatrixInvalidError):
            OutcomeMatrix.from_entries([[1]])
        with pytest.raises(ShapeError):
            OutcomeMatrix.from_entries([[0, 1, -1], [-1, 0, 0]])

    def test_entries_are_read_only_int8(self):
        u = OutcomeMatrix.from_entries(FIVE_ENTRIES)
        assert u.entries.dtype == np.int8
        with pytest.raises(ValueError):
            u.entries[0, 0] = 1

    def test_build_matches_pairwise_comparison(self):
        rng = np.random.default_rng(12)
        h = [tte("t", position=0), cont("x", threshold=1.0, position=1)]
        for _ in range(25):
            k = int(rng.integers(2, 12))
            recs = []
            for i in range(k):
                t = MeasureValue(float(rng.integers(0, 5)), bool(rng.integers(0, 2)))
                x = MeasureValue(float(rng.integers(-3, 4)))
                recs.append(PatientRecord(f"p{i}", int(rng.integers(0, 2)), (t, x)))
            u = build_outcome_matrix(recs, h)
            for i in range(k):
                for j in range(k):
                    want = 0 if i == j else compare_pair(recs[i], recs[j], h)
                    assert u.entries[i, j] == want

    def test_fixture_dataset_reproduces_the_frozen_matrix(self):
        hierarchy = read_hierarchy(str(DATA_DIR / "five_patients_hierarchy.json"))
        records = read_records(str(DATA_DIR / "five_patients.csv"), hierarchy)
        u = build_outcome_matrix(records, hierarchy)
        assert u.entries.tolist() == [list(r) for r in FIVE_ENTRIES]
        assert [r.arm for r in records] == list(FIVE_ARMS)
        want = (DATA_DIR / "five_patients_matrix.txt").read_text()
        assert format_matrix(u) == want
