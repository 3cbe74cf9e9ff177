"""List-sieve engine: stage-1 list construction and the deterministic reducer.

Stage 1 samples perturbed points, reduces each against the current list and
appends the resulting lattice point whenever no list element brings it below
the insertion threshold.  Stage 2 maps fresh uniform ball samples through the
same deterministic reducer to harvest short lattice vectors.

Reduction decisions run on floats (relative margin 1e-12, exact re-check on
near ties); integer coefficient bookkeeping keeps every emitted vector an
exact lattice member regardless of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .core import Basis, LatticeVector, as_scalar, as_vector, l2_norm_sq
from .errors import ListCapExceeded

ROUND_BITS = 32  # dyadic resolution of ball samples
REL_MARGIN = 1e-12


@dataclass(frozen=True)
class SieveParams:
    """All sieve constants.

    mu is the exact guess on the l2 length of the unknown short vector;
    xi scales the sampling radius, c the claimed output radius.
    """

    mu: Fraction
    epsilon: float = 0.1
    xi: float = 0.9476
    c: float = 3.0
    list_cap: int = 256
    seed: int = 0
    stage1_samples: int | None = None  # default: 4 * list_cap

    def __post_init__(self):
        object.__setattr__(self, "mu", as_scalar(self.mu))
        if self.epsilon <= 0 or self.xi < 0.5 or self.c <= 1 or self.list_cap < 1:
            raise ValueError("invalid sieve parameters")
        if self.mu <= 0:
            raise ValueError("mu must be positive")

    @property
    def n_stage1(self) -> int:
        return self.stage1_samples if self.stage1_samples is not None else 4 * self.list_cap


class SieveList:
    """Append-ordered list of lattice vectors with duplicate suppression by coeffs."""

    def __init__(self, dim: int):
        self.items: list[LatticeVector] = []
        self._seen: set[tuple] = set()
        self._float = np.empty((0, dim))
        self._dim = dim

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def append(self, v: LatticeVector) -> bool:
        if v.coeffs in self._seen:
            return False
        self.items.append(v)
        self._seen.add(v.coeffs)
        row = np.array([[float(x) for x in v.coords]])
        self._float = np.vstack([self._float, row])
        return True

    @property
    def float_rows(self) -> np.ndarray:
        return self._float


def mod_lattice(y, B: Basis) -> tuple[Fraction, ...]:
    """Fractional remainder of y modulo the lattice: all basis coefficients in [0,1).

    Invariant under lattice shifts of y.
    """
    lam = B.solve(y)
    yv = as_vector(y)
    floors = [_floor(l) for l in lam]
    shift = B.multiply(floors)
    return tuple(a - b for a, b in zip(yv, shift))


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def sample_ball(radius, n: int, rng: np.random.Generator) -> tuple[Fraction, ...]:
    """Uniform sample from radius * B_2^n, rounded to dyadic rationals.

    The unit-ball sample is truncated toward zero at resolution 2^-32 and then
    scaled exactly, so the norm bound is never exceeded and a run at radius
    lambda*r with the same stream equals lambda times the run at r whenever
    lambda is exactly representable.
    """
    g = rng.standard_normal(n)
    norm = float(np.linalg.norm(g))
    while norm == 0.0:
        g = rng.standard_normal(n)
        norm = float(np.linalg.norm(g))
    u = rng.random() ** (1.0 / n)
    unit = g / norm * u
    scale = as_scalar(float(radius)) if not isinstance(radius, Fraction) else radius
    denom = 1 << ROUND_BITS
    num, den = scale.numerator, scale.denominator * denom
    return tuple(Fraction(int(x * denom) * num, den) for x in unit)


def _floors_of(y, B: Basis, yf: np.ndarray) -> list[int]:
    """Component floors of B^-1 y: float fast path, exact solve near boundaries."""
    lam_f = B.float_inverse() @ yf
    if float(np.min(np.abs(lam_f - np.round(lam_f)))) < 1e-6:
        return [_floor(l) for l in B.solve(y)]
    return [int(x) for x in np.floor(lam_f)]


def _reduce_against(y, floors: list[int], L: SieveList, B: Basis, yf: np.ndarray):
    """Greedy list reduction of the remainder of y; returns the used coeff sum.

    Each accepted step strictly decreases the l2 length, so the loop
    terminates (finitely many coset points below the starting norm).  The scan
    runs on floats; the exact remainder is reconstructed only for near ties.
    """
    n = B.dim
    used = [0] * n
    if not L.items:
        return tuple(used)
    rf = yf - B.float_matrix() @ np.array(floors, dtype=float)

    def exact_remainder():
        shift = B.multiply([f + u for f, u in zip(floors, used)])
        return [a - b for a, b in zip(as_vector(y), shift)]

    while True:
        cur_sq = float(rf @ rf)
        diffs = rf[None, :] - L.float_rows
        norms_sq = np.einsum("ij,ij->i", diffs, diffs)
        k = int(np.argmin(norms_sq))
        if norms_sq[k] < cur_sq * (1.0 - REL_MARGIN):
            accept = True
        elif norms_sq[k] <= cur_sq * (1.0 + REL_MARGIN):
            # near tie: exact re-check
            r_exact = exact_remainder()
            cand = [a - b for a, b in zip(r_exact, L.items[k].coords)]
            accept = l2_norm_sq(cand) < l2_norm_sq(r_exact)
        else:
            accept = False
        if not accept:
            break
        v = L.items[k]
        rf = diffs[k]
        used = [a + b for a, b in zip(used, v.coeffs)]
    return tuple(used)


def list_reduce(y, L: SieveList, B: Basis) -> LatticeVector:
    """ListRed: reduce the remainder of y against L, land back on a lattice point.

    Output is (reduced remainder) - y, an exact lattice member; short whenever
    the list brings the remainder down.
    """
    yf = np.array([float(as_scalar(x)) for x in y])
    floors = _floors_of(y, B, yf)
    used = _reduce_against(y, floors, L, B, yf)
    # r_red - y = -floors*B - sum(used); coefficients stay integer-exact
    coeffs = tuple(-f - u for f, u in zip(floors, used))
    return B.vector(coeffs)


def build_list(B: Basis, params: SieveParams, rng: np.random.Generator) -> SieveList:
    """Stage 1: grow the reduction list until the sample budget is exhausted.

    Each perturbation e yields the lattice point p = (reduced remainder of e) - e.
    p is appended when it is new, nonzero and longer than the insertion
    threshold xi*mu; duplicate suppression is what saturates the list.
    """
    n = B.dim
    radius = Fraction(params.xi) * params.mu
    thresh_sq = radius * radius  # insertion threshold xi * mu, compared squared
    thresh_sq_f = float(thresh_sq)
    Bf = B.float_matrix()
    L = SieveList(n)
    for _ in range(params.n_stage1):
        e = sample_ball(radius, n, rng)
        ef = np.array([float(x) for x in e])
        floors = _floors_of(e, B, ef)
        used = _reduce_against(e, floors, L, B, ef)
        coeffs = tuple(-f - u for f, u in zip(floors, used))
        if all(c == 0 for c in coeffs) or coeffs in L._seen:
            continue
        cf = Bf @ np.array(coeffs, dtype=float)
        norm_sq_f = float(cf @ cf)
        if norm_sq_f > thresh_sq_f * (1.0 + REL_MARGIN):
            long_enough = True
        elif norm_sq_f < thresh_sq_f * (1.0 - REL_MARGIN):
            long_enough = False
        else:
            long_enough = l2_norm_sq(B.multiply(coeffs)) > thresh_sq
        if long_enough:
            if len(L) >= params.list_cap:
                raise ListCapExceeded(
                    f"sieve list would exceed cap {params.list_cap}; "
                    "mu is far too small or the cap too tight"
                )
            L.append(B.vector(coeffs))
    return L


def sieve_candidates(
    B: Basis, params: SieveParams, N: int, rng: np.random.Generator | None = None
) -> list[LatticeVector]:
    """Stage 1 + stage 2: build the list once, then reduce N fresh ball samples."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(params.seed))
    L = build_list(B, params, rng)
    radius = Fraction(params.xi) * params.mu
    out = []
    for _ in range(N):
        y = sample_ball(radius, B.dim, rng)
        out.append(list_reduce(y, L, B))
    return out
