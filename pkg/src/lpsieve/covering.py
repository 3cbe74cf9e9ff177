"""Convex-geometry toolbox: covering exponents, Steiner volumes, grid covers.

Everything here answers one question in some guise: how many translates of a
scaled lp ball are needed to cover a euclidean ball, per dimension, as a
base-2 exponential rate.  A constructive greedy set cover certifies the
bounds at tiny dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate, optimize, special

from .errors import GroundSetTooLarge, QuadratureFailure

LOG2E = math.log2(math.e)


def binary_entropy(phi: float) -> float:
    """H(phi) in bits; 0 at the endpoints."""
    if phi <= 0.0 or phi >= 1.0:
        return 0.0
    return -phi * math.log2(phi) - (1.0 - phi) * math.log2(1.0 - phi)


def solve_phi(a: float) -> float:
    """The unique phi in (0,1) with (1 - phi^2)/phi^3 = 2 a^2 / pi.

    Bisection on the strictly decreasing left-hand side, run to a relative
    residual of 1e-12.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    rhs = 2.0 * a * a / math.pi

    def f(phi):
        return (1.0 - phi * phi) / phi**3 - rhs

    lo, hi = 1e-9, 1.0 - 1e-15
    while f(lo) < 0:
        lo *= 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if abs(f(mid)) <= 1e-12 * rhs:
            return mid
    return 0.5 * (lo + hi)


def ball_cube_exponent(a: float) -> float:
    """Base-2 growth rate per dimension of vol(a B_inf^n + sqrt(n) B_2^n)."""
    phi = solve_phi(a)
    return (
        binary_entropy(phi)
        + (1.0 - phi) * math.log2(2.0 * a)
        + 0.5 * phi * math.log2(2.0 * math.pi * math.e / phi)
    )


def covering_exponent_linf(a: float) -> float:
    """Base-2 rate of the covering number of sqrt(n) B_2^n by boxes a B_inf^n."""
    phi = solve_phi(a)
    return binary_entropy(phi) + 0.5 * phi * math.log2(2.0 * math.pi * math.e / phi)


def solve_a_eps_linf(eps: float) -> float:
    """Minimal box scale a with covering_exponent_linf(a) <= eps (rel. tol 1e-6)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    lo, hi = 1e-3, 1.0
    while covering_exponent_linf(hi) > eps:
        hi *= 2.0
    while covering_exponent_linf(lo) < eps:
        lo *= 0.5
    while hi / lo > 1.0 + 1e-7:
        mid = math.sqrt(lo * hi)
        if covering_exponent_linf(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


def covering_exponent_l1(c: float) -> float:
    """Base-2 rate of vol(B_1^n + (c/sqrt(n)) B_2^n) / vol((c/sqrt(n)) B_2^n).

    E(c) = max over phi in [0,1] of 2 H(phi) + (phi/2) log2(2e / (pi c^2)).
    """
    if c <= 0:
        raise ValueError("c must be positive")
    t = math.log2(2.0 * math.e / (math.pi * c * c))

    def neg(phi):
        return -(2.0 * binary_entropy(phi) + 0.5 * phi * t)

    res = optimize.minimize_scalar(neg, bounds=(0.0, 1.0), method="bounded",
                                   options={"xatol": 1e-9})
    return max(0.0, -res.fun)


def maximizer_phi_l1(c: float) -> float:
    """The phi realizing covering_exponent_l1(c); decays like Theta(1/sqrt(c))."""
    t = math.log2(2.0 * math.e / (math.pi * c * c))

    def neg(phi):
        return -(2.0 * binary_entropy(phi) + 0.5 * phi * t)

    res = optimize.minimize_scalar(neg, bounds=(0.0, 1.0), method="bounded",
                                   options={"xatol": 1e-12})
    return float(res.x)


def solve_a_eps_l1(eps: float) -> float:
    """Minimal c with covering_exponent_l1(c) <= eps (rel. tol 1e-6)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    lo, hi = 1.0, 2.0
    while covering_exponent_l1(hi) > eps:
        hi *= 2.0
    while covering_exponent_l1(lo) < eps and lo > 1e-6:
        lo *= 0.5
    while hi / lo > 1.0 + 1e-7:
        mid = math.sqrt(lo * hi)
        if covering_exponent_l1(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class CoveringBound:
    """A box/ball scale with its cubic solution and covering rate."""

    a: float
    phi: float
    exponent: float

    @staticmethod
    def for_scale(a: float) -> "CoveringBound":
        return CoveringBound(a=a, phi=solve_phi(a), exponent=covering_exponent_linf(a))


def unit_ball_volume(k: int) -> float:
    """Volume of the k-dimensional euclidean unit ball, pi^(k/2)/Gamma(k/2+1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.pi ** (k / 2.0) / special.gamma(k / 2.0 + 1.0)


def intrinsic_volumes_B1(n: int) -> list[float]:
    """Intrinsic volumes V_0..V_n of the n-dimensional cross-polytope.

    V_n = 2^n/n! exactly; for j < n the Betke-Henk double integral is
    evaluated by adaptive quadrature (relative accuracy 1e-8).  The inner
    integral is (sqrt(pi)/2) erf(x/sqrt(j+1)).
    """
    if not (1 <= n <= 30):
        raise ValueError("n out of range [1, 30]")
    V = [0.0] * (n + 1)
    V[0] = 1.0
    V[n] = 2.0**n / math.gamma(n + 1)
    for j in range(1, n):
        k = n - j - 1  # power on the inner integral
        root = math.sqrt(j + 1)

        def integrand(x, k=k, root=root):
            inner = 0.5 * math.sqrt(math.pi) * special.erf(x / root)
            return math.exp(-x * x) * inner**k

        # e^{-x^2} < 1e-16 beyond x ~ 6.1; integrate a bit further for slack
        val, err = integrate.quad(integrand, 0.0, 8.0, epsabs=0.0, epsrel=1e-10, limit=200)
        if val <= 0.0 or err > 1e-8 * val:
            raise QuadratureFailure(f"V_{j}(B_1^{n}): estimated error {err} vs value {val}")
        coeff = (
            2.0**n
            * math.comb(n, j + 1)
            * math.sqrt(j + 1)
            / (math.gamma(j + 1) * math.pi ** ((n - j) / 2.0))
        )
        V[j] = coeff * val
    return V


def steiner_volume(V: list[float], t: float, n: int) -> float:
    """vol(K + t B_2^n) = sum_j V_j(K) vol(B_2^{n-j}) t^{n-j}."""
    if len(V) != n + 1:
        raise ValueError("need exactly n+1 intrinsic volumes")
    if t < 0:
        raise ValueError("t must be >= 0")
    return sum(V[j] * unit_ball_volume(n - j) * t ** (n - j) for j in range(n + 1))


def cube_intrinsic_volumes(a: float, n: int) -> list[float]:
    """V_j(a B_inf^n) = (2a)^j C(n, j)."""
    return [(2.0 * a) ** j * math.comb(n, j) for j in range(n + 1)]


def project_l1_ball(X: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Row-wise euclidean projection onto the l1 ball of the given radius.

    Sorted-threshold method: for rows already inside the ball the point is
    returned unchanged; otherwise soft-threshold at the largest theta with
    sum(max(|x|-theta, 0)) = radius.
    """
    X = np.asarray(X, dtype=float)
    A = np.abs(X)
    inside = A.sum(axis=1) <= radius
    U = np.sort(A, axis=1)[:, ::-1]
    cssv = np.cumsum(U, axis=1) - radius
    ks = np.arange(1, X.shape[1] + 1)
    rho = np.count_nonzero(U * ks > cssv, axis=1)
    theta = cssv[np.arange(len(X)), rho - 1] / rho
    P = np.sign(X) * np.maximum(A - theta[:, None], 0.0)
    P[inside] = X[inside]
    return P


@dataclass(frozen=True)
class GridCover:
    """A constructive cover of the grid points of sqrt(n) B_2^n by cubes.

    Cube centers live on the (1/n)-grid; half-width `a` covers the ground
    set, `a + 1/(2n)` covers the continuous ball.
    """

    n: int
    a: float
    centers: tuple = field(default_factory=tuple)
    grid_step: Fraction = Fraction(1)

    @property
    def continuous_half_width(self) -> Fraction:
        return Fraction(self.a).limit_denominator(10**12) + self.grid_step / 2

    def covers_point(self, point) -> bool:
        ha = Fraction(self.a).limit_denominator(10**12)
        return any(all(abs(p - c) <= ha for p, c in zip(point, ctr)) for ctr in self.centers)


def grid_ground_set(n: int, guard: int = 10**6) -> list[tuple[Fraction, ...]]:
    """(1/n) Z^n intersected with sqrt(n) B_2^n, exactly."""
    # integer points k with sum k_i^2 <= n^3
    bound_sq = n**3
    kmax = math.isqrt(bound_sq)
    pts: list[tuple[Fraction, ...]] = []
    step = Fraction(1, n)

    def rec(prefix, remaining_sq, depth):
        if len(pts) > guard:
            raise GroundSetTooLarge(f"ground set exceeds guard {guard}")
        if depth == n:
            pts.append(tuple(Fraction(k, n) for k in prefix))
            return
        r = math.isqrt(remaining_sq)
        for k in range(-r, r + 1):
            rec(prefix + [k], remaining_sq - k * k, depth + 1)

    rec([], bound_sq, 0)
    return pts


def greedy_grid_cover(n: int, a: float, guard: int = 10**6) -> GridCover:
    """Greedy set cover of the grid ground set by cubes a B_inf^n on the (1/n)-grid."""
    if n > 4:
        raise GroundSetTooLarge("constructive cover is guarded to n <= 4")
    ground = grid_ground_set(n, guard=guard)
    ha = Fraction(a).limit_denominator(10**12)
    step = Fraction(1, n)

    # integer-scaled view: points are k/n, cube centers c/n, |k - c| <= a*n
    reach = int(ha / step)  # floor(a*n): grid offsets covered along one axis
    pts = {tuple(int(x * n) for x in p) for p in ground}
    uncovered = set(pts)
    # candidate centers: every grid point whose cube touches the ground set
    coverage: dict[tuple, set] = {}
    offsets = range(-reach, reach + 1)
    for p in pts:
        for ctr in _center_candidates(p, offsets, n):
            coverage.setdefault(ctr, set()).add(p)

    centers = []
    while uncovered:
        best_ctr = max(
            coverage,
            key=lambda c: (len(coverage[c] & uncovered), tuple(-abs(x) for x in c), c),
        )
        gain = coverage[best_ctr] & uncovered
        if not gain:
            raise RuntimeError("greedy cover stalled")  # cannot happen: every point covers itself
        centers.append(best_ctr)
        uncovered -= gain

    ctr_vecs = tuple(tuple(Fraction(c, n) for c in ctr) for ctr in sorted(centers))
    return GridCover(n=n, a=a, centers=ctr_vecs, grid_step=step)


def _center_candidates(p, offsets, n):
    if n == 1:
        for o in offsets:
            yield (p[0] + o,)
    else:
        for o in offsets:
            for rest in _center_candidates(p[1:], offsets, n - 1):
                yield (p[0] + o, *rest)


def exact_set_cover_size(ground: list, sets: list[set]) -> int:
    """Optimal set-cover size by branch and bound; only for tiny instances."""
    universe = set(ground)
    sets = [s & universe for s in sets if s & universe]
    best = [len(sets)]

    def rec(uncovered, count):
        if not uncovered:
            best[0] = min(best[0], count)
            return
        if count + 1 >= best[0]:
            return
        # branch on an uncovered element with fewest options
        elem = min(uncovered, key=lambda e: sum(1 for s in sets if e in s))
        for s in sorted((s for s in sets if elem in s), key=len, reverse=True):
            rec(uncovered - s, count + 1)

    rec(frozenset(universe), 0)
    return best[0]
