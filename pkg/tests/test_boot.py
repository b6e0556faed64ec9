"""Closed-form bootstrap moments."""

from fractions import Fraction

import numpy as np
import pytest

from winmoments import (
    Method,
    OutcomeMatrix,
    ShapeError,
    bootstrap_moments,
    enumerate_bootstrap_moments,
    summarize,
)

from conftest import (
    BOOT_COV,
    BOOT_EXP,
    BOOT_VAR_DIFF,
    random_arms,
    random_skew,
    rel_err,
)


def test_golden_values_exact(summary5):
    mom, counts = bootstrap_moments(summary5, 2, 3, exact=True)
    assert mom.method is Method.BOOTSTRAP_TWO_SAMPLE
    assert (mom.exp_t, mom.exp_c) == BOOT_EXP
    assert mom.cov.tolist() == [list(r) for r in BOOT_COV]
    assert mom.exp_diff == 1
    assert mom.var_diff == BOOT_VAR_DIFF
    # every win edge is counted once at each endpoint
    assert counts.tt_edge_t + counts.tt_edge_c == 2 * summary5.observed_t_wins
    assert counts.cc_edge_t + counts.cc_edge_c == 2 * summary5.observed_c_wins


def test_golden_values_float(summary5):
    mom, _ = bootstrap_moments(summary5, 2, 3)
    assert rel_err(mom.exp_t, 2.0) < 1e-13
    assert rel_err(mom.cov[0, 0], 10 / 6) < 1e-13
    assert rel_err(mom.cov[0, 1], -1 / 6) < 1e-13
    assert rel_err(mom.cov[1, 1], 9 / 6) < 1e-13
    assert rel_err(mom.var_diff, 3.5) < 1e-13
    mom.validate()


def test_expectations_equal_observed_wins():
    rng = np.random.default_rng(41)
    for _ in range(150):
        n = int(rng.integers(2, 20))
        u = random_skew(rng, n)
        arms = random_arms(rng, n)
        s = summarize(u, arms)
        mom, _ = bootstrap_moments(s, s.m, s.n, exact=True)
        assert mom.exp_t == s.observed_t_wins
        assert mom.exp_c == s.observed_c_wins


def test_within_arm_edges_do_not_matter():
    rng = np.random.default_rng(42)
    for _ in range(100):
        n = int(rng.integers(2, 15))
        u = random_skew(rng, n)
        arms = random_arms(rng, n)
        treat = arms.arms.astype(bool)
        cross = np.outer(treat, ~treat) | np.outer(~treat, treat)
        stripped = OutcomeMatrix.from_entries(np.where(cross, u.entries, 0))
        a, _ = bootstrap_moments(summarize(u, arms), arms.m, arms.n, exact=True)
        b, _ = bootstrap_moments(summarize(stripped, arms), arms.m, arms.n, exact=True)
        assert a.exp_t == b.exp_t and a.exp_c == b.exp_c
        assert a.cov.tolist() == b.cov.tolist()


def test_tiny_designs_match_enumeration():
    rng = np.random.default_rng(43)
    for n in (2, 3, 4, 5):
        for _ in range(30):
            u = random_skew(rng, n)
            arms = random_arms(rng, n)
            s = summarize(u, arms)
            closed, _ = bootstrap_moments(s, s.m, s.n, exact=True)
            oracle = enumerate_bootstrap_moments(u, arms, exact=True)
            assert closed.exp_t == oracle.exp_t
            assert closed.exp_c == oracle.exp_c
            assert closed.cov.tolist() == oracle.cov.tolist()


def test_float_mode_matches_rounded_exact():
    rng = np.random.default_rng(44)
    for _ in range(100):
        n = int(rng.integers(2, 16))
        s = summarize(random_skew(rng, n), random_arms(rng, n))
        f, _ = bootstrap_moments(s, s.m, s.n)
        ef = bootstrap_moments(s, s.m, s.n, exact=True)[0].as_float()
        assert rel_err(f.exp_t, ef.exp_t) < 1e-14
        assert np.allclose(f.cov, ef.cov, rtol=1e-13, atol=1e-16)


def test_single_patient_arms_have_zero_spread():
    # m = n = 1: resampling each arm always returns the same patient
    u = OutcomeMatrix.from_entries([[0, 1], [-1, 0]])
    s = summarize(u, random_arms(np.random.default_rng(45), 2))
    mom, _ = bootstrap_moments(s, 1, 1, exact=True)
    assert mom.var_diff == 0
    assert mom.cov.tolist() == [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]


def test_split_must_match_summary(summary5):
    with pytest.raises(ShapeError):
        bootstrap_moments(summary5, 3, 2, exact=True)
