"""Exact SVP/CVP by Fincke-Pohst enumeration at small dimension.

Ground truth for every approximation-factor test.  The depth-first search
prunes with an l2 radius; since the lp optimum v satisfies
||v||_2 <= n^max(0, 1/2 - 1/p) ||v||_p, an l2 ball around the best known lp
candidate provably contains the lp optimum.  Survivors are re-scored in lp
with exact arithmetic where the norm admits it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .core import Basis, LatticeVector, NormKind, gram_schmidt, norm_measure
from .errors import DimensionTooLarge
from .reduction import lll_reduce

MAX_DIM = 10


@dataclass(frozen=True)
class OracleAnswer:
    best: LatticeVector
    value: object  # exact Fraction for p in {1, inf}; float otherwise
    enumerated_count: int


def _value_from_measure(measure, p: NormKind):
    if p.is_inf or p.p == 1:
        return measure  # already the exact norm
    if p.p == 2:
        return math.sqrt(float(measure))  # measure is the exact square
    return float(measure)


def _l2_cert_factor(n: int, p: NormKind) -> float:
    """n^max(0, 1/2 - 1/p): converts an lp bound into a sound l2 radius."""
    if p.is_inf:
        return math.sqrt(n)
    return n ** max(0.0, 0.5 - 1.0 / float(p.p))


def hp_lp_norm(coords, p: NormKind) -> float:
    """lp norm at 50 significant digits, rounded to double (for p not in {1,2,inf})."""
    with mpmath.workdps(50):
        s = mpmath.mpf(0)
        pf = mpmath.mpf(float(p.p))
        for x in coords:
            s += abs(mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)) ** pf
        return float(s ** (1 / pf))


def exact_svp(B: Basis, p: NormKind) -> OracleAnswer:
    """Shortest nonzero lattice vector w.r.t. lp, certified by enumeration."""
    if B.dim > MAX_DIM:
        raise DimensionTooLarge(f"oracle guarded to n <= {MAX_DIM}")
    R = lll_reduce(B)
    n = B.dim
    bstar, mu = gram_schmidt(R)
    bstar_sq = [sum(float(x) ** 2 for x in v) for v in bstar]
    muf = [[float(mu[i][j]) for j in range(n)] for i in range(n)]

    factor = _l2_cert_factor(n, p)
    # initial lp bound from the reduced basis vectors themselves
    c0 = min(range(n), key=lambda c: (norm_measure(R.columns[c], p), c))
    best = [norm_measure(R.columns[c0], p), R.vector(tuple(int(i == c0) for i in range(n)))]
    count = [0]

    def l2_radius_sq():
        nb = float(_value_from_measure(best[0], p))
        return (factor * nb) ** 2 * (1.0 + 1e-9)

    def consider(coeffs):
        v = R.vector(coeffs)
        if v.is_zero:
            return
        m = norm_measure(v.coords, p)
        if m < best[0] or (m == best[0] and v.coeffs < best[1].coeffs):
            best[0], best[1] = m, v

    _enumerate(n, muf, bstar_sq, [0.0] * n, l2_radius_sq, consider, count)
    ans = _rescore(best[1], best[0], p)
    # report coefficients w.r.t. the caller's basis
    orig = B.coeffs_of(best[1].coords)
    v = LatticeVector(orig, best[1].coords, basis=B)
    return OracleAnswer(best=v, value=ans, enumerated_count=count[0])


def exact_cvp(B: Basis, t, p: NormKind) -> OracleAnswer:
    """Closest lattice vector to t w.r.t. lp, certified by enumeration."""
    if B.dim > MAX_DIM:
        raise DimensionTooLarge(f"oracle guarded to n <= {MAX_DIM}")
    R = lll_reduce(B)
    n = B.dim
    from .core import as_vector

    t = as_vector(t)
    bstar, mu = gram_schmidt(R)
    bstar_sq = [sum(float(x) ** 2 for x in v) for v in bstar]
    muf = [[float(mu[i][j]) for j in range(n)] for i in range(n)]

    # target in Gram-Schmidt coordinates: t = sum tau_i b*_i
    tau = [
        sum(float(ti) * float(bi) for ti, bi in zip(t, bstar[i])) / bstar_sq[i]
        for i in range(n)
    ]

    factor = _l2_cert_factor(n, p)
    babai = babai_rounding(R, t)
    best_meas = norm_measure([a - b for a, b in zip(t, babai.coords)], p)
    best = [best_meas, babai]
    count = [0]

    def l2_radius_sq():
        nb = float(_value_from_measure(best[0], p))
        return (factor * nb) ** 2 * (1.0 + 1e-9) + 1e-30

    def consider(coeffs):
        v = R.vector(coeffs)
        diff = [a - b for a, b in zip(t, v.coords)]
        m = norm_measure(diff, p)
        if m < best[0] or (m == best[0] and v.coeffs < best[1].coeffs):
            best[0], best[1] = m, v

    _enumerate(n, muf, bstar_sq, tau, l2_radius_sq, consider, count)
    ans = _rescore_diff(t, best[1], best[0], p)
    orig = B.coeffs_of(best[1].coords)
    v = LatticeVector(orig, best[1].coords, basis=B)
    return OracleAnswer(best=v, value=ans, enumerated_count=count[0])


def babai_rounding(B: Basis, t) -> LatticeVector:
    """Babai's rounding: round the exact coordinates of t in the basis."""
    lam = B.solve(t)
    return B.vector(tuple(int(round(l)) for l in lam))


def _rescore(v: LatticeVector, measure, p: NormKind):
    if p.is_inf or p.p == 1:
        return measure
    if p.p == 2:
        return math.sqrt(float(measure))
    return hp_lp_norm(v.coords, p)


def _rescore_diff(t, v: LatticeVector, measure, p: NormKind):
    if p.is_inf or p.p == 1:
        return measure
    if p.p == 2:
        return math.sqrt(float(measure))
    diff = [a - b for a, b in zip(t, v.coords)]
    return hp_lp_norm(diff, p)


def _enumerate(n, mu, bstar_sq, tau, radius_sq_fn, consider, count):
    """DFS over integer coefficients x_n..x_1 with l2 pruning around tau.

    For v = sum x_i b_i, the Gram-Schmidt coordinate at level i is
    c_i = x_i + sum_{j>i} mu_ji x_j, and ||v - t||^2 = sum (c_i - tau_i)^2 ||b*_i||^2.
    """
    x = [0] * n
    # partial[i] = contribution of levels i..n-1 already fixed
    def rec(level, acc):
        Rsq = radius_sq_fn()
        if acc > Rsq:
            return
        if level < 0:
            count[0] += 1
            consider(tuple(x))
            return
        center = tau[level] - sum(mu[j][level] * x[j] for j in range(level + 1, n))
        slack = (Rsq - acc) / bstar_sq[level]
        half = math.sqrt(max(slack, 0.0))
        lo = math.ceil(center - half - 1e-12)
        hi = math.floor(center + half + 1e-12)
        # sweep outward from the center so the bound tightens early
        order = sorted(range(lo, hi + 1), key=lambda k: (abs(k - center), k))
        for k in order:
            x[level] = k
            contrib = (k - center) ** 2 * bstar_sq[level]
            rec(level - 1, acc + contrib)
        x[level] = 0

    rec(n - 1, 0.0)
