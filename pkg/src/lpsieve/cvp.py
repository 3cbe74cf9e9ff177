"""Approximate CVP_p: Kannan embedding + pairwise differences for p >= 2,
and the ball-covering reduction to CVP_2 for p in [1, 2).

For p >= 2 the target is appended to the basis with a small bottom-right
entry mu/n; short vectors of the embedded lattice whose last coordinate is
exactly +-mu/n encode t - v for lattice v.  For p < 2 the lp ball around t is
covered by euclidean balls of radius a_eps n^(1/2-1/p) per unit of distance
guess; each ball center becomes a CVP_2 target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .core import (
    Basis,
    LatticeVector,
    NormKind,
    as_vector,
    gram_schmidt,
    lp_norm,
    norm_measure,
)
from .covering import solve_a_eps_l1
from .errors import AllZero, ListCapExceeded, RejectionBudgetExceeded, SolverFailed
from .oracle import babai_rounding
from .reduction import lll_reduce
from .sieve import SieveParams, sieve_candidates
from .svp import (
    DEFAULT_LIST_CAP,
    DEFAULT_SAMPLE_CAP,
    SolveReport,
    SvpQuery,
    approx_svp,
    default_list_cap,
)

COVER_TARGET_CAP = 1 << 12
REJECTION_BUDGET = 10_000


@dataclass(frozen=True)
class CvpQuery:
    basis: Basis
    target: tuple
    p: NormKind
    epsilon: float = 0.1
    retries: int = 4
    seed: int = 0
    xi: float = 0.9476
    c: float = 3.0
    cap_samples: int = DEFAULT_SAMPLE_CAP
    cap_list: int = DEFAULT_LIST_CAP

    def __post_init__(self):
        object.__setattr__(self, "target", as_vector(self.target))
        if len(self.target) != self.basis.dim:
            raise ValueError("target not in the ambient space of the basis")
        if self.epsilon <= 0 or self.retries < 1:
            raise ValueError("invalid query")


@dataclass(frozen=True)
class EmbeddedBasis:
    """Kannan embedding: top-left block B, last column (t, mu/n), bottom row zero."""

    base: Basis
    mu_over_n: Fraction


def kannan_embed(B: Basis, t, mu: Fraction) -> EmbeddedBasis:
    t = as_vector(t)
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    n = B.dim
    mon = mu / n
    cols = [list(col) + [Fraction(0)] for col in B.columns]
    cols.append(list(t) + [mon])
    return EmbeddedBasis(base=Basis(cols), mu_over_n=mon)


def distance_grid(B: Basis, t) -> tuple[list[Fraction], bool]:
    """Geometric distance guesses with exact ratio (1+1/n).

    Returns (grid, exact_hit): exact_hit flags t in the lattice, which
    bypasses sieving entirely.  The window runs from min ||b*_i||/2 (or the
    Babai distance if smaller) up to the Babai distance.
    """
    t = as_vector(t)
    if B.coeffs_of(t) is not None:
        return [], True
    n = B.dim
    bstar, _ = gram_schmidt(B)
    babai = babai_rounding(B, t)
    upper = math.sqrt(float(sum((a - b) ** 2 for a, b in zip(t, babai.coords))))
    lo_b = min(math.sqrt(float(sum(x * x for x in v))) for v in bstar) / 2.0
    lower = min(lo_b, upper)
    ratio = Fraction(n + 1, n)
    g = Fraction(lower)
    grid = [g]
    while float(grid[-1]) < upper:
        grid.append(grid[-1] * ratio)
    return grid, False


def formula_n_samples_cvp(n: int, epsilon: float, c: float) -> int:
    """N = ceil((2 c (n+1) + 2) 2^((eps + 0.401) n)), sized for the slab layers."""
    return math.ceil((2.0 * c * (n + 1) + 2.0) * 2.0 ** ((epsilon + 0.401) * n))


def approx_cvp_high(
    q: CvpQuery,
    rng: np.random.Generator | None = None,
    distance_hint: list[Fraction] | None = None,
) -> SolveReport:
    """Approximate CVP_p for p >= 2 via Kannan embedding and pairwise differences."""
    if not q.p.is_inf and q.p.p < 2:
        raise ValueError("approx_cvp_high requires p >= 2")
    B = lll_reduce(q.basis)
    n = B.dim
    t = q.target

    grid, exact_hit = distance_grid(B, t)
    if exact_hit:
        v = LatticeVector(q.basis.coeffs_of(t), t, basis=q.basis)
        return SolveReport(
            best=v, achieved_norm=0.0, mu_used=Fraction(0), n_samples=0,
            seed=q.seed, retry_index=0, extras={"exact_hit": True},
        )
    if n == 1:
        return _rank1_cvp(q, B)
    if distance_hint is not None:
        grid = list(distance_hint)

    N_formula = formula_n_samples_cvp(n, q.epsilon, q.c)
    N = min(N_formula, q.cap_samples)
    cap_bound = N < N_formula
    list_cap = min(default_list_cap(n + 1, q.epsilon), q.cap_list)

    best: LatticeVector | None = None
    best_meas = None
    best_mu = None
    best_retry = 0
    ss = np.random.SeedSequence(q.seed)
    streams = ss.spawn(q.retries)
    for retry in range(q.retries):
        rng_r = np.random.default_rng(streams[retry])
        for mu in grid:
            emb = kannan_embed(B, t, mu)
            emb_red = lll_reduce(emb.base)
            params = SieveParams(
                mu=mu * Fraction(n + 1, n), epsilon=q.epsilon, xi=q.xi, c=q.c,
                list_cap=list_cap, seed=q.seed,
            )
            try:
                cands = sieve_candidates(emb_red, params, N, rng=rng_r)
            except ListCapExceeded:
                continue
            cand = _best_recovered(cands, emb.mu_over_n, t, q.p, B)
            if cand is None:
                continue
            m = norm_measure([a - b for a, b in zip(t, cand.coords)], q.p)
            if best is None or m < best_meas or (m == best_meas and cand.coeffs < best.coeffs):
                best, best_meas, best_mu, best_retry = cand, m, mu, retry
    if best is None:
        raise SolverFailed("no candidate difference with last coordinate +-mu/n within budget")
    coeffs = q.basis.coeffs_of(best.coords)
    out = LatticeVector(coeffs, best.coords, basis=q.basis)
    return SolveReport(
        best=out,
        achieved_norm=lp_norm([a - b for a, b in zip(t, out.coords)], q.p),
        mu_used=best_mu,
        n_samples=N,
        seed=q.seed,
        retry_index=best_retry,
        cap_bound=cap_bound,
        extras={"n_formula": N_formula, "grid_size": len(grid)},
    )


def _rank1_cvp(q: CvpQuery, B: Basis) -> SolveReport:
    # rank-1 CVP is exact: round the single coordinate
    lam = B.solve(q.target)[0]
    cands = [B.vector((_ik,)) for _ik in (int(math.floor(lam)), int(math.ceil(lam)))]
    v = min(cands, key=lambda w: (norm_measure([a - b for a, b in zip(q.target, w.coords)], q.p), w.coeffs))
    coeffs = q.basis.coeffs_of(v.coords)
    out = LatticeVector(coeffs, v.coords, basis=q.basis)
    return SolveReport(
        best=out,
        achieved_norm=lp_norm([a - b for a, b in zip(q.target, out.coords)], q.p),
        mu_used=Fraction(0), n_samples=0, seed=q.seed, retry_index=0,
        extras={"rank1": True},
    )


def _best_recovered(cands, mu_over_n: Fraction, t, p: NormKind, B: Basis):
    """Minimal-lp recovery over pairwise differences (and singletons) whose
    last coordinate is exactly +-mu/n."""
    n = len(t)
    # integer multiplier of mu/n in the last coordinate, exact
    layers = []
    for v in cands:
        k = v.coords[n] / mu_over_n
        layers.append(int(k) if k.denominator == 1 else None)
    # float screen over all pairwise differences; only the leaders are
    # re-scored exactly, so the Fraction work stays O(1) per call
    Cf = np.array([[float(x) for x in v.coords[:n]] for v in cands])
    fronts, entries, seen = [], [], set()

    def admit(front_f, key, i, j, sign):
        if key not in seen:
            seen.add(key)
            fronts.append(front_f)
            entries.append((i, j, sign))

    for i, v in enumerate(cands):
        if layers[i] == 1 or layers[i] == -1:
            s = layers[i]
            admit(s * Cf[i], tuple(s * c for c in v.coeffs), i, None, s)
    for i in range(len(cands)):
        if layers[i] is None:
            continue
        for j in range(i + 1, len(cands)):
            if layers[j] is None:
                continue
            dk = layers[i] - layers[j]
            if dk == 1 or dk == -1:
                key = tuple(dk * (a - b) for a, b in zip(cands[i].coeffs, cands[j].coeffs))
                admit(dk * (Cf[i] - Cf[j]), key, i, j, dk)
    if not fronts:
        return None
    F = np.array(fronts)
    if p.is_inf:
        meas_f = np.max(np.abs(F), axis=1)
    else:
        meas_f = np.sum(np.abs(F) ** p.as_float(), axis=1)
    leaders = np.argsort(meas_f, kind="stable")[:16]
    best = None
    for idx in leaders:
        i, j, sign = entries[idx]
        raw = cands[i].coords[:n] if j is None else tuple(
            a - b for a, b in zip(cands[i].coords[:n], cands[j].coords[:n])
        )
        front = raw if sign > 0 else tuple(-x for x in raw)
        vcoords = tuple(a - b for a, b in zip(t, front))
        coeffs = B.coeffs_of(vcoords)
        if coeffs is None:
            continue  # cannot happen for true embedded differences
        v = LatticeVector(coeffs, vcoords, basis=B)
        m = (norm_measure(front, p), v.coeffs)
        if best is None or m < best[0]:
            best = (m, v)
    return best[1] if best is not None else None


def project_to_lp_ball(x, p: NormKind, r: float) -> np.ndarray:
    """Euclidean projection of x onto r * B_p^n for 1 <= p < 2 (accuracy 1e-9).

    p = 1 uses the exact sorted-threshold method; p in (1, 2) a monotone
    bisection on the Lagrange multiplier.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    x = np.asarray(x, dtype=float)
    pf = p.as_float()
    if not (1.0 <= pf < 2.0):
        raise ValueError("projection implemented for 1 <= p < 2")
    if _lp(x, pf) <= r:
        return x.copy()
    sign = np.sign(x)
    ax = np.abs(x)
    if pf == 1.0:
        return sign * _project_simplex(ax, r)
    # KKT: w_i + lam * p * w_i^(p-1) = |x_i|, w_i >= 0, ||w||_p = r
    lo, hi = 0.0, float(np.max(ax)) ** (2.0 - pf) / pf + 1.0
    for _ in range(200):
        lam = 0.5 * (lo + hi)
        w = _solve_w(ax, lam, pf)
        norm = _lp(w, pf)
        if norm > r:
            lo = lam
        else:
            hi = lam
        if hi - lo < 1e-14 * (1.0 + hi):
            break
    w = _solve_w(ax, 0.5 * (lo + hi), pf)
    # exact rescale onto the sphere kills the residual of the outer bisection
    nw = _lp(w, pf)
    if nw > 0:
        w = w * (r / nw)
    return sign * w


def _lp(v, pf: float) -> float:
    return float(np.sum(np.abs(v) ** pf) ** (1.0 / pf))


def _project_simplex(ax: np.ndarray, r: float) -> np.ndarray:
    s = np.sort(ax)[::-1]
    cums = np.cumsum(s)
    ks = np.arange(1, len(ax) + 1)
    cond = s - (cums - r) / ks > 0
    rho = int(np.nonzero(cond)[0].max()) + 1
    theta = (cums[rho - 1] - r) / rho
    return np.maximum(ax - theta, 0.0)


def _solve_w(ax: np.ndarray, lam: float, pf: float) -> np.ndarray:
    """Componentwise solve of w + lam p w^(p-1) = a by inner bisection."""
    out = np.zeros_like(ax)
    for i, a in enumerate(ax):
        if a <= 0 or lam <= 0:
            out[i] = max(a, 0.0)
            continue
        lo, hi = 0.0, a
        for _ in range(80):
            w = 0.5 * (lo + hi)
            f = w + lam * pf * w ** (pf - 1.0) - a
            if f > 0:
                hi = w
            else:
                lo = w
        out[i] = 0.5 * (lo + hi)
    return out


def sample_cover_target(
    t, p: NormKind, a: float, scale: float, n: int, rng: np.random.Generator,
    budget: int = REJECTION_BUDGET,
) -> np.ndarray:
    """Uniform sample from t + scale * (B_p^n + rho B_2^n), rho = a n^(1/2-1/p).

    Rejection from the bounding box; membership via the distance to the
    projected point on the lp ball.
    """
    if a <= 0 or scale <= 0:
        raise ValueError("a and scale must be positive")
    t = np.asarray([float(x) for x in t])
    pf = p.as_float()
    rho = a * n ** (0.5 - 1.0 / pf)
    half = scale * (1.0 + rho)
    for _ in range(budget):
        x = t + rng.uniform(-half, half, size=n)
        d = x - t
        proj = project_to_lp_ball(d, p, scale)
        if float(np.linalg.norm(d - proj)) <= scale * rho + 1e-9:
            return x
    raise RejectionBudgetExceeded(f"no acceptance within {budget} proposals")


def cover_target_count(n: int, epsilon: float) -> int:
    """M = ceil(n^2 2^(eps n)), capped."""
    return min(math.ceil(n * n * 2.0 ** (epsilon * n)), COVER_TARGET_CAP)


def approx_cvp_low(q: CvpQuery, rng: np.random.Generator | None = None) -> SolveReport:
    """Approximate CVP_p for 1 <= p < 2 by covering the lp ball with CVP_2 targets."""
    pf = q.p.as_float()
    if not (1.0 <= pf < 2.0):
        raise ValueError("approx_cvp_low requires 1 <= p < 2")
    B = lll_reduce(q.basis)
    n = B.dim
    t = q.target

    grid2, exact_hit = distance_grid(B, t)
    if exact_hit:
        v = LatticeVector(q.basis.coeffs_of(t), t, basis=q.basis)
        return SolveReport(
            best=v, achieved_norm=0.0, mu_used=Fraction(0), n_samples=0,
            seed=q.seed, retry_index=0, extras={"exact_hit": True, "a_eps": None},
        )
    a_eps = solve_a_eps_l1(q.epsilon)
    rho = a_eps * n ** (0.5 - 1.0 / pf)
    envelope = q.c * (a_eps + 1.0)
    # convert the l2 window to an lp window: ||x||_2 <= ||x||_p <= n^(1/p-1/2) ||x||_2
    ratio = Fraction(n + 1, n)
    g = grid2[0]
    upper = float(grid2[-1]) * n ** (1.0 / pf - 0.5) * (1.0 + 1.0 / n)
    grid = [g]
    while float(grid[-1]) < upper:
        grid.append(grid[-1] * ratio)

    M = cover_target_count(n, q.epsilon)
    ss = np.random.SeedSequence(q.seed)
    streams = ss.spawn(q.retries)
    # The sampling region t + g(B_p + rho B_2) always contains its own center,
    # so the center is admissible as a cover target at every guess.  Solving it
    # once up front gives a deterministic candidate that can only shrink the min.
    center = None
    try:
        center_rep = approx_cvp_high(
            CvpQuery(
                basis=B, target=t, p=NormKind(2), epsilon=q.epsilon,
                retries=max(1, q.retries // 2), seed=q.seed, xi=q.xi, c=q.c,
                cap_samples=q.cap_samples, cap_list=q.cap_list,
            )
        )
        cv = center_rep.best
        cm = norm_measure([a - b for a, b in zip(t, cv.coords)], q.p)
        center = ((cm, cv.coeffs), cv)
    except SolverFailed:
        pass
    best = None  # (measure, coeffs tie-break, vector, guess)
    for retry in range(q.retries):
        rng_r = np.random.default_rng(streams[retry])
        accepted = None
        for guess in grid:
            gf = float(guess)
            cand_best = center
            for k in range(M):
                try:
                    x = sample_cover_target(t, q.p, a_eps, gf, n, rng_r)
                except RejectionBudgetExceeded:
                    continue
                inner = CvpQuery(
                    basis=B, target=tuple(Fraction(v).limit_denominator(1 << 32) for v in x),
                    p=NormKind(2), epsilon=q.epsilon, retries=1,
                    seed=q.seed, xi=q.xi, c=q.c,
                    cap_samples=min(q.cap_samples, 64), cap_list=min(q.cap_list, 64),
                )
                try:
                    rep = approx_cvp_high(inner)
                except SolverFailed:
                    continue
                v = rep.best
                diff = [a - b for a, b in zip(t, v.coords)]
                m = norm_measure(diff, q.p)
                key = (m, v.coeffs)
                if cand_best is None or key < cand_best[0]:
                    cand_best = (key, v)
            if cand_best is not None:
                m = cand_best[0][0]
                if float(m) <= envelope * gf:
                    accepted = (cand_best[0], cand_best[1], guess)
                    break
        if accepted is not None:
            key, v, guess = accepted
            if best is None or key < best[0]:
                best = (key, v, guess, retry)
    if best is None:
        raise SolverFailed("no distance guess produced a vector within the acceptance envelope")
    key, v, guess, retry = best
    coeffs = q.basis.coeffs_of(v.coords)
    out = LatticeVector(coeffs, v.coords, basis=q.basis)
    return SolveReport(
        best=out,
        achieved_norm=lp_norm([a - b for a, b in zip(t, out.coords)], q.p),
        mu_used=guess,
        n_samples=M,
        seed=q.seed,
        retry_index=retry,
        extras={"a_eps": a_eps, "envelope": envelope, "accepted_guess": float(guess)},
    )


def approx_svp_low(
    basis: Basis, p: NormKind, epsilon: float = 0.1, retries: int = 4, seed: int = 0,
    rng: np.random.Generator | None = None, xi: float = 0.9476, c: float = 3.0,
    cap_samples: int = DEFAULT_SAMPLE_CAP, cap_list: int = DEFAULT_LIST_CAP,
) -> SolveReport:
    """Approximate SVP_p for 1 <= p < 2: the t = 0 covering route, zeros filtered."""
    pf = p.as_float()
    if not (1.0 <= pf < 2.0):
        raise ValueError("approx_svp_low requires 1 <= p < 2")
    B = lll_reduce(basis)
    n = B.dim
    a_eps = solve_a_eps_l1(epsilon)
    rho = a_eps * n ** (0.5 - 1.0 / pf)
    envelope = c * (a_eps + 1.0)

    bstar, _ = gram_schmidt(B)
    lo = min(math.sqrt(float(sum(x * x for x in v))) for v in bstar) / 2.0
    hi = math.sqrt(float(sum(x * x for x in B.columns[0]))) * n ** (1.0 / pf - 0.5) * (1 + 1 / n)
    ratio = Fraction(n + 1, n)
    grid = [Fraction(lo)]
    while float(grid[-1]) < hi:
        grid.append(grid[-1] * ratio)

    M = cover_target_count(n, epsilon)
    zero = tuple(Fraction(0) for _ in range(n))
    ss = np.random.SeedSequence(seed)
    streams = ss.spawn(retries)
    # Deterministic nonzero candidate: an l2-short vector rescored in lp.  It
    # plays the role of the center cover target (where the CVP_2 answer would
    # be filtered as zero) and can only shrink the min.
    center = None
    try:
        srep = approx_svp(SvpQuery(
            basis=B, p=NormKind(2), epsilon=epsilon,
            retries=max(1, retries // 2), seed=seed, xi=xi, c=c,
            cap_samples=cap_samples, cap_list=cap_list,
        ))
        sv = srep.best
        center = ((norm_measure(sv.coords, p), sv.coeffs), sv)
    except SolverFailed:
        pass
    best = None
    for retry in range(retries):
        rng_r = np.random.default_rng(streams[retry])
        accepted = None
        for guess in grid:
            gf = float(guess)
            cand_best = center
            for k in range(M):
                try:
                    x = sample_cover_target(zero, p, a_eps, gf, n, rng_r)
                except RejectionBudgetExceeded:
                    continue
                inner = CvpQuery(
                    basis=B, target=tuple(Fraction(v).limit_denominator(1 << 32) for v in x),
                    p=NormKind(2), epsilon=epsilon, retries=1, seed=seed, xi=xi, c=c,
                    cap_samples=min(cap_samples, 64), cap_list=min(cap_list, 64),
                )
                try:
                    rep = approx_cvp_high(inner)
                except SolverFailed:
                    continue
                v = rep.best
                if v.is_zero:
                    continue
                m = norm_measure(v.coords, p)
                key = (m, v.coeffs)
                if cand_best is None or key < cand_best[0]:
                    cand_best = (key, v)
            if cand_best is not None:
                m = cand_best[0][0]
                if float(m) <= envelope * gf:
                    accepted = (cand_best[0], cand_best[1], guess)
                    break
        if accepted is not None:
            key, v, guess = accepted
            if best is None or key < best[0]:
                best = (key, v, guess, retry)
    if best is None:
        raise SolverFailed("no distance guess produced a nonzero vector within the envelope")
    key, v, guess, retry = best
    coeffs = basis.coeffs_of(v.coords)
    out = LatticeVector(coeffs, v.coords, basis=basis)
    return SolveReport(
        best=out,
        achieved_norm=lp_norm(out.coords, p),
        mu_used=guess,
        n_samples=M,
        seed=seed,
        retry_index=retry,
        extras={"a_eps": a_eps, "envelope": envelope, "accepted_guess": float(guess)},
    )
