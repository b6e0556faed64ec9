"""Brute-force and Monte Carlo estimators of the win-count moments.

These are the independent validation routes for the closed forms: full
enumeration of arm assignments, weighted enumeration of bootstrap
multiplicity vectors, and seeded random sampling from both
distributions. Enumeration accumulates in integers and divides exactly,
so its float output is the correctly rounded true value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import GuardError, InputError, ShapeError
from .graph import ArmAssignment
from .outcome import OutcomeMatrix
from .results import Method, WinMoments

GUARD_LIMIT = 10**6

# Monte Carlo chunk rows are fixed by N alone so a given (seed, reps)
# always consumes the generator stream identically.
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True, slots=True)
class McConfig:
    """Repetition count and seed for the Monte Carlo estimators.

    The generator is NumPy's default PCG64; runs are reproducible given
    the seed.
    """

    reps: int
    seed: int

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise InputError(f"reps must be at least 1, got {self.reps}")
        if self.seed < 0:
            raise InputError(f"seed must be a nonnegative integer, got {self.seed}")


def _check_shapes(u: OutcomeMatrix, arms: ArmAssignment) -> None:
    if arms.n_patients != u.n_patients:
        raise ShapeError(f"arm assignment has {arms.n_patients} entries for a {u.n_patients}-patient matrix")


def _win_masks(u: OutcomeMatrix, arms: ArmAssignment) -> tuple[np.ndarray, np.ndarray]:
    pos = u.entries == 1
    treat = arms.arms.astype(bool)
    mask_t = (pos & np.outer(treat, ~treat)).astype(np.float64)
    mask_c = (pos & np.outer(~treat, treat)).astype(np.float64)
    return mask_t, mask_c


def _moments_from_counts(
    method: Method,
    w_t: np.ndarray,
    w_c: np.ndarray,
    weights: np.ndarray | None,
    denom: int,
    exact: bool,
) -> WinMoments:
    """Exact population moments of integer count pairs with integer weights."""
    if weights is None:
        s_t = int(w_t.sum())
        s_c = int(w_c.sum())
        s_tt = int(np.sum(w_t * w_t))
        s_cc = int(np.sum(w_c * w_c))
        s_tc = int(np.sum(w_t * w_c))
    else:
        s_t = int(np.sum(weights * w_t))
        s_c = int(np.sum(weights * w_c))
        s_tt = int(np.sum(weights * w_t * w_t))
        s_cc = int(np.sum(weights * w_c * w_c))
        s_tc = int(np.sum(weights * w_t * w_c))
    exp_t = Fraction(s_t, denom)
    exp_c = Fraction(s_c, denom)
    cov_tt = Fraction(s_tt, denom) - exp_t * exp_t
    cov_cc = Fraction(s_cc, denom) - exp_c * exp_c
    cov_tc = Fraction(s_tc, denom) - exp_t * exp_c
    if exact:
        cov = np.array([[cov_tt, cov_tc], [cov_tc, cov_cc]], dtype=object)
        return WinMoments.from_parts(method, exp_t, exp_c, cov)
    cov = np.array(
        [[float(cov_tt), float(cov_tc)], [float(cov_tc), float(cov_cc)]], dtype=np.float64
    )
    return WinMoments.from_parts(method, float(exp_t), float(exp_c), cov)


# ---------------------------------------------------------------------------
# permutation enumeration


def _batch_perm_counts(
    pos: np.ndarray, colsum: np.ndarray, assign: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Win counts for a batch of 0/1 treatment assignment rows."""
    b = assign @ pos
    w_t = np.rint((b * (1.0 - assign)).sum(axis=1)).astype(np.int64)
    w_c = np.rint(((colsum - b) * assign).sum(axis=1)).astype(np.int64)
    return w_t, w_c


def enumerate_permutation_win_counts(
    u: OutcomeMatrix, m: int, n: int, limit: int = GUARD_LIMIT
) -> tuple[np.ndarray, np.ndarray]:
    """(W_T, W_C) for every one of the C(N, m) assignments, equally likely."""
    big_n = u.n_patients
    if m < 1 or n < 1 or m + n != big_n:
        raise InputError(f"(m, n) = ({m}, {n}) is not a valid split of {big_n} patients")
    total = math.comb(big_n, m)
    if total > limit:
        raise GuardError(f"permutation enumeration needs C({big_n}, {m}) = {total} assignments, guard is {limit}")
    pos = (u.entries == 1).astype(np.float64)
    colsum = pos.sum(axis=0)
    w_t = np.empty(total, dtype=np.int64)
    w_c = np.empty(total, dtype=np.int64)
    rows = max(1, _CHUNK_CELLS // big_n)
    combos = itertools.combinations(range(big_n), m)
    done = 0
    while done < total:
        take = min(rows, total - done)
        idx = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, take)),
            dtype=np.int64,
            count=take * m,
        ).reshape(take, m)
        assign = np.zeros((take, big_n), dtype=np.float64)
        assign[np.arange(take)[:, None], idx] = 1.0
        w_t[done : done + take], w_c[done : done + take] = _batch_perm_counts(pos, colsum, assign)
        done += take
    return w_t, w_c


def enumerate_permutation_moments(
    u: OutcomeMatrix, m: int, n: int, exact: bool = False, limit: int = GUARD_LIMIT
) -> WinMoments:
    """Exact moments of (W_T, W_C) by enumerating every arm assignment."""
    w_t, w_c = enumerate_permutation_win_counts(u, m, n, limit)
    return _moments_from_counts(Method.ORACLE_PERMUTATION, w_t, w_c, None, w_t.size, exact)


# ---------------------------------------------------------------------------
# bootstrap enumeration


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _multinomial_weights(total: int, parts: int) -> tuple[np.ndarray, np.ndarray]:
    """Composition matrix and the number of raw samples each one represents."""
    comps = list(_compositions(total, parts))
    mat = np.array(comps, dtype=np.float64)
    fact = math.factorial(total)
    weights = np.array(
        [fact // math.prod(math.factorial(k) for k in comp) for comp in comps],
        dtype=np.int64,
    )
    return mat, weights


def enumerate_bootstrap_win_counts(
    u: OutcomeMatrix, arms: ArmAssignment, limit: int = GUARD_LIMIT
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """(W_T, W_C, weight) per multiplicity vector, and the sample-count denominator.

    Weights are products of multinomial coefficients: how many of the
    m^m * n^n raw bootstrap samples produce each multiplicity vector.
    """
    _check_shapes(u, arms)
    m, n = arms.m, arms.n
    total = math.comb(2 * m - 1, m - 1) * math.comb(2 * n - 1, n - 1)
    if total > limit:
        raise GuardError(
            f"bootstrap enumeration needs C({2 * m - 1}, {m - 1}) * C({2 * n - 1}, {n - 1}) "
            f"= {total} multiplicity vectors, guard is {limit}"
        )
    mask_t, mask_c = _win_masks(u, arms)
    t_idx = np.flatnonzero(arms.arms == 1)
    c_idx = np.flatnonzero(arms.arms == 0)
    a_t = mask_t[np.ix_(t_idx, c_idx)]
    a_c = mask_c[np.ix_(c_idx, t_idx)]
    k_mat, k_w = _multinomial_weights(m, m)
    l_mat, l_w = _multinomial_weights(n, n)
    # integer-valued float64 matmuls; totals stay below 2**53 under the guard
    w_t = np.rint(k_mat @ a_t @ l_mat.T).astype(np.int64)
    w_c = np.rint(l_mat @ a_c @ k_mat.T).astype(np.int64).T
    weight = k_w[:, None] * l_w[None, :]
    denom = m**m * n**n
    return w_t.ravel(), w_c.ravel(), weight.ravel(), denom


def enumerate_bootstrap_moments(
    u: OutcomeMatrix, arms: ArmAssignment, exact: bool = False, limit: int = GUARD_LIMIT
) -> WinMoments:
    """Exact moments of (W_T, W_C) over all two-sample bootstrap draws."""
    w_t, w_c, weight, denom = enumerate_bootstrap_win_counts(u, arms, limit)
    return _moments_from_counts(Method.ORACLE_BOOTSTRAP, w_t, w_c, weight, denom, exact)


# ---------------------------------------------------------------------------
# Monte Carlo


def _mc_moments(
    counts: Iterator[tuple[np.ndarray, np.ndarray]], reps: int
) -> WinMoments:
    s_t = s_c = 0.0
    s_tt = s_cc = s_tc = 0.0
    for w_t, w_c in counts:
        wt = w_t.astype(np.float64)
        wc = w_c.astype(np.float64)
        s_t += wt.sum()
        s_c += wc.sum()
        s_tt += np.sum(wt * wt)
        s_cc += np.sum(wc * wc)
        s_tc += np.sum(wt * wc)
    exp_t = s_t / reps
    exp_c = s_c / reps
    if reps < 2:
        cov = np.full((2, 2), math.nan)
    else:
        # unbiased sample covariance with the reps - 1 divisor
        cov_tt = (s_tt - s_t * s_t / reps) / (reps - 1)
        cov_cc = (s_cc - s_c * s_c / reps) / (reps - 1)
        cov_tc = (s_tc - s_t * s_c / reps) / (reps - 1)
        cov = np.array([[cov_tt, cov_tc], [cov_tc, cov_cc]], dtype=np.float64)
    return WinMoments.from_parts(Method.MONTE_CARLO, exp_t, exp_c, cov)


def _iter_mc_permutation(
    u: OutcomeMatrix, arms: ArmAssignment, cfg: McConfig
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    big_n = u.n_patients
    m = arms.m
    pos = (u.entries == 1).astype(np.float64)
    colsum = pos.sum(axis=0)
    rng = np.random.default_rng(cfg.seed)
    rows = max(1, _CHUNK_CELLS // big_n)
    done = 0
    while done < cfg.reps:
        take = min(rows, cfg.reps - done)
        noise = rng.random((take, big_n))
        idx = np.argpartition(noise, m, axis=1)[:, :m]
        assign = np.zeros((take, big_n), dtype=np.float64)
        assign[np.arange(take)[:, None], idx] = 1.0
        yield _batch_perm_counts(pos, colsum, assign)
        done += take


def _iter_mc_bootstrap(
    u: OutcomeMatrix, arms: ArmAssignment, cfg: McConfig
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    big_n = u.n_patients
    m, n = arms.m, arms.n
    mask_t, mask_c = _win_masks(u, arms)
    t_idx = np.flatnonzero(arms.arms == 1)
    c_idx = np.flatnonzero(arms.arms == 0)
    rng = np.random.default_rng(cfg.seed)
    rows = max(1, _CHUNK_CELLS // big_n)
    done = 0
    while done < cfg.reps:
        take = min(rows, cfg.reps - done)
        mult = np.zeros((take, big_n), dtype=np.float64)
        mult[:, t_idx] = rng.multinomial(m, np.full(m, 1.0 / m), size=take)
        mult[:, c_idx] = rng.multinomial(n, np.full(n, 1.0 / n), size=take)
        w_t = np.rint(((mult @ mask_t) * mult).sum(axis=1)).astype(np.int64)
        w_c = np.rint(((mult @ mask_c) * mult).sum(axis=1)).astype(np.int64)
        yield w_t, w_c
        done += take


def mc_permutation(u: OutcomeMatrix, arms: ArmAssignment, cfg: McConfig) -> WinMoments:
    """Sample mean and covariance over random arm permutations."""
    _check_shapes(u, arms)
    return _mc_moments(_iter_mc_permutation(u, arms, cfg), cfg.reps)


def mc_bootstrap(u: OutcomeMatrix, arms: ArmAssignment, cfg: McConfig) -> WinMoments:
    """Sample mean and covariance over random two-sample bootstrap draws."""
    _check_shapes(u, arms)
    return _mc_moments(_iter_mc_bootstrap(u, arms, cfg), cfg.reps)


def mc_permutation_win_counts(
    u: OutcomeMatrix, arms: ArmAssignment, cfg: McConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Raw sampled (W_T, W_C) pairs under arm permutation."""
    _check_shapes(u, arms)
    chunks = list(_iter_mc_permutation(u, arms, cfg))
    return np.concatenate([c[0] for c in chunks]), np.concatenate([c[1] for c in chunks])


def mc_bootstrap_win_counts(
    u: OutcomeMatrix, arms: ArmAssignment, cfg: McConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Raw sampled (W_T, W_C) pairs under the two-sample bootstrap."""
    _check_shapes(u, arms)
    chunks = list(_iter_mc_bootstrap(u, arms, cfg))
    return np.concatenate([c[0] for c in chunks]), np.concatenate([c[1] for c in chunks])
