"""Approximate SVP_p for p in [2, inf]: length-guess loop plus pairwise differences.

For each guess mu on the unknown l2 length, sieve candidates are harvested and
the shortest nonzero lp vector among all pairwise differences (and the
candidates themselves) is kept.  Retries with fresh seed streams stand in for
the per-trial constant success probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import Basis, LatticeVector, NormKind, gram_schmidt, lp_norm, norm_measure
from .errors import AllZero, ListCapExceeded, SolverFailed
from .reduction import lll_reduce
from .sieve import SieveParams, sieve_candidates

DEFAULT_SAMPLE_CAP = 1 << 16
DEFAULT_LIST_CAP = 4096


@dataclass(frozen=True)
class SvpQuery:
    basis: Basis
    p: NormKind
    epsilon: float = 0.1
    retries: int = 8
    seed: int = 0
    xi: float = 0.9476
    c: float = 3.0
    cap_samples: int = DEFAULT_SAMPLE_CAP
    cap_list: int = DEFAULT_LIST_CAP

    def __post_init__(self):
        if not self.p.is_inf and self.p.p < 2:
            raise ValueError("SvpQuery requires p >= 2; use the covering route for p < 2")
        if self.epsilon <= 0 or self.retries < 1:
            raise ValueError("invalid query")


@dataclass(frozen=True)
class SolveReport:
    best: LatticeVector
    achieved_norm: float
    mu_used: Fraction
    n_samples: int
    seed: int
    retry_index: int
    cap_bound: bool = False
    extras: dict = field(default_factory=dict)


def formula_n_samples(n: int, epsilon: float) -> int:
    """N = 2 * ceil(2^((eps + 0.401) n) + 1), the pairwise-difference sample count."""
    return 2 * math.ceil(2.0 ** ((epsilon + 0.401) * n) + 1.0)


def default_list_cap(n: int, epsilon: float) -> int:
    # the asymptotic space bound 2^((0.401+eps) n) is meaningless at desk
    # scale; keep a generous floor so dedupe, not the cap, bounds the list
    return max(256, 2 * math.ceil(2.0 ** ((0.401 + epsilon) * n)))


def mu_grid(B: Basis) -> list[Fraction]:
    """Geometric guesses with exact ratio (1+1/n) covering [min ||b*_i||, ||b_1||].

    For any lambda in the window some grid point mu satisfies
    lambda <= mu <= (1+1/n) lambda.  B should be LLL-reduced.

    Anchored on rational homogeneous bounds (||v||_inf <= ||v||_2 <= ||v||_1),
    so the grid is built in exact arithmetic and scaling B by a rational s
    scales every grid point by exactly s.
    """
    n = B.dim
    bstar, _ = gram_schmidt(B)
    lo = min(max(abs(x) for x in v) for v in bstar)
    hi = sum(abs(x) for x in B.columns[0])
    ratio = Fraction(n + 1, n)
    g = lo
    grid = [g]
    while grid[-1] < hi:
        grid.append(grid[-1] * ratio)
    return grid


def pairwise_min_diff(cands: list[LatticeVector], p: NormKind) -> LatticeVector:
    """Nonzero vector of minimal lp norm among all pairwise differences and
    the candidates themselves; ties broken by lexicographic coeffs order."""
    if not cands:
        raise AllZero("no candidates")
    pool: dict[tuple, LatticeVector] = {}
    for v in cands:
        if not v.is_zero and v.coeffs not in pool:
            pool[v.coeffs] = v
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            d = cands[i] - cands[j]
            if not d.is_zero and d.coeffs not in pool:
                pool[d.coeffs] = d
    if not pool:
        raise AllZero("every candidate and pairwise difference is zero")
    return min(pool.values(), key=lambda v: (norm_measure(v.coords, p), v.coeffs))


def approx_svp(q: SvpQuery, rng: np.random.Generator | None = None) -> SolveReport:
    """Theorem-style approximate SVP_p, p >= 2: sieve + all pairwise differences."""
    B = lll_reduce(q.basis)
    n = B.dim
    if n == 1:
        # rank-1 SVP is exact: the generator itself
        coeffs = q.basis.coeffs_of(B.columns[0])
        out = LatticeVector(coeffs, B.columns[0], basis=q.basis)
        return SolveReport(
            best=out, achieved_norm=lp_norm(out.coords, q.p), mu_used=Fraction(0),
            n_samples=0, seed=q.seed, retry_index=0, extras={"rank1": True},
        )
    N_formula = formula_n_samples(n, q.epsilon)
    N = min(N_formula, q.cap_samples)
    cap_bound = N < N_formula
    list_cap = min(default_list_cap(n, q.epsilon), q.cap_list)
    grid = mu_grid(B)

    best: LatticeVector | None = None
    best_meas = None
    best_mu = None
    best_retry = 0
    ss = np.random.SeedSequence(q.seed)
    streams = ss.spawn(q.retries)
    for retry in range(q.retries):
        rng_r = np.random.default_rng(streams[retry])
        for mu in grid:
            params = SieveParams(
                mu=mu, epsilon=q.epsilon, xi=q.xi, c=q.c, list_cap=list_cap, seed=q.seed
            )
            try:
                cands = sieve_candidates(B, params, N, rng=rng_r)
                cand = pairwise_min_diff(cands, q.p)
            except (ListCapExceeded, AllZero):
                continue
            m = norm_measure(cand.coords, q.p)
            if best is None or m < best_meas or (m == best_meas and cand.coeffs < best.coeffs):
                best, best_meas, best_mu, best_retry = cand, m, mu, retry
    if best is None:
        raise SolverFailed("no nonzero vector found within the retry budget")
    # report w.r.t. the original (unreduced) basis
    coeffs = q.basis.coeffs_of(best.coords)
    out = LatticeVector(coeffs, best.coords, basis=q.basis)
    return SolveReport(
        best=out,
        achieved_norm=lp_norm(out.coords, q.p),
        mu_used=best_mu,
        n_samples=N,
        seed=q.seed,
        retry_index=best_retry,
        cap_bound=cap_bound,
        extras={"n_formula": N_formula, "grid_size": len(grid)},
    )
