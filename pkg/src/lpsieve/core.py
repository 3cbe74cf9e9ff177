"""Exact-rational lattice foundation: bases, lattice vectors, lp norms, Gram-Schmidt.

All lattice data is kept as `fractions.Fraction` ("Scalar"); floating point
only enters when a norm is requested as a float for comparisons.  The zero
vector is always detected through its integer coefficients, never through a
floating norm.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import RankDeficient

Scalar = Fraction

INF = math.inf


def as_scalar(x) -> Fraction:
    """Coerce ints, strings like '3/4', floats and Fractions to an exact Scalar."""
    if isinstance(x, Fraction):
        # Rebuild if the internals are not plain ints (e.g. numpy integers),
        # which would silently overflow in later exact arithmetic.
        if type(x.numerator) is int and type(x.denominator) is int:
            return x
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, float):
        return Fraction(x)  # exact binary expansion, no rounding
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


def as_vector(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_scalar(x) for x in v)


class NormKind:
    """An lp norm index: a rational p >= 1 or infinity."""

    __slots__ = ("p",)

    def __init__(self, p):
        if p == INF or (isinstance(p, str) and p.strip().lower() in ("inf", "infinity", "oo")):
            self.p = INF
            return
        p = Fraction(p)
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
        self.p = p

    @property
    def is_inf(self) -> bool:
        return self.p == INF

    def as_float(self) -> float:
        return INF if self.is_inf else float(self.p)

    def __eq__(self, other):
        return isinstance(other, NormKind) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return "NormKind(inf)" if self.is_inf else f"NormKind({self.p})"

    def __str__(self):
        return "inf" if self.is_inf else str(self.p)


def lp_norm(v: Sequence, p: NormKind) -> float:
    """(sum |v_i|^p)^(1/p), or max |v_i| for p = infinity, as a double."""
    xs = [abs(float(x)) for x in v]
    if not xs:
        raise ValueError("empty vector")
    if p.is_inf:
        return max(xs)
    pf = p.as_float()
    if pf == 1.0:
        return sum(xs)
    if pf == 2.0:
        return math.hypot(*xs)
    m = max(xs)
    if m == 0.0:
        return 0.0
    return m * sum((x / m) ** pf for x in xs) ** (1.0 / pf)


def lp_norm_exact(v: Sequence, p: NormKind) -> Fraction:
    """Exact lp norm as a Scalar; only p in {1, inf} admit an exact value."""
    if p.is_inf:
        return max(abs(as_scalar(x)) for x in v)
    if p.p == 1:
        return sum((abs(as_scalar(x)) for x in v), Fraction(0))
    raise ValueError(f"no exact rational lp norm for p={p}")


def l2_norm_sq(v: Sequence) -> Fraction:
    """Exact squared euclidean norm."""
    return sum((as_scalar(x) ** 2 for x in v), Fraction(0))


def norm_measure(v: Sequence, p: NormKind):
    """A totally ordered, order-faithful stand-in for the lp norm.

    Exact Fractions for p in {1, inf} and the *square* for p = 2; a double
    otherwise.  Only comparable within one fixed p.
    """
    if p.is_inf or p.p == 1:
        return lp_norm_exact(v, p)
    if p.p == 2:
        return l2_norm_sq(v)
    return lp_norm(v, p)


class Basis:
    """Full-rank square matrix of Scalars whose *columns* generate the lattice.

    Immutable after construction; rank is certified by an exact determinant.
    """

    __slots__ = ("dim", "columns", "_inv", "_float_cols", "_float_inv", "_det")

    def __init__(self, columns: Sequence[Sequence]):
        cols = tuple(as_vector(c) for c in columns)
        n = len(cols)
        if n < 1 or any(len(c) != n for c in cols):
            raise ValueError("basis must be a nonempty square column list")
        self.dim = n
        self.columns = cols
        self._det = _det_exact(cols)
        if self._det == 0:
            raise RankDeficient("basis columns are linearly dependent")
        self._inv = None
        self._float_cols = None
        self._float_inv = None

    @property
    def det(self) -> Fraction:
        return self._det

    def float_matrix(self) -> np.ndarray:
        """n x n double matrix with basis vectors as columns."""
        if self._float_cols is None:
            self._float_cols = np.array(
                [[float(self.columns[j][i]) for j in range(self.dim)] for i in range(self.dim)]
            )
            self._float_cols.setflags(write=False)
        return self._float_cols

    def float_inverse(self) -> np.ndarray:
        """Double-precision inverse, cached; for fast-path screening only."""
        if self._float_inv is None:
            self._float_inv = np.linalg.inv(self.float_matrix())
            self._float_inv.setflags(write=False)
        return self._float_inv

    def multiply(self, coeffs: Sequence) -> tuple[Fraction, ...]:
        """B x, exactly."""
        n = self.dim
        return tuple(
            sum((as_scalar(coeffs[j]) * self.columns[j][i] for j in range(n)), Fraction(0))
            for i in range(n)
        )

    def solve(self, y: Sequence) -> tuple[Fraction, ...]:
        """The unique exact lambda with B lambda = y."""
        if self._inv is None:
            self._inv = _invert_exact(self.columns, self._det)
        yv = as_vector(y)
        n = self.dim
        return tuple(
            sum((self._inv[i][j] * yv[j] for j in range(n)), Fraction(0)) for i in range(n)
        )

    def vector(self, coeffs: Sequence[int]) -> "LatticeVector":
        return LatticeVector(tuple(int(c) for c in coeffs), self.multiply(coeffs))

    def coeffs_of(self, coords: Sequence) -> tuple[int, ...] | None:
        """Integer coefficients of coords if it is a lattice member, else None."""
        lam = self.solve(coords)
        if all(l.denominator == 1 for l in lam):
            return tuple(int(l) for l in lam)
        return None

    def scale(self, factor) -> "Basis":
        f = as_scalar(factor)
        return Basis([[f * x for x in col] for col in self.columns])

    def __eq__(self, other):
        return isinstance(other, Basis) and self.columns == other.columns

    def __hash__(self):
        return hash(self.columns)

    def __repr__(self):
        return f"Basis(dim={self.dim})"

    @staticmethod
    def identity(n: int) -> "Basis":
        return Basis([[Fraction(int(i == j)) for i in range(n)] for j in range(n)])


class LatticeVector:
    """An integer coefficient vector together with its exact ambient coordinates."""

    __slots__ = ("coeffs", "coords")

    def __init__(self, coeffs: Sequence[int], coords: Sequence, basis: Basis | None = None):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.coords = as_vector(coords)
        if basis is not None and basis.multiply(self.coeffs) != self.coords:
            raise ValueError("coords do not equal Basis * coeffs")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
            tuple(a - b for a, b in zip(self.coords, other.coords)),
        )

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-c for c in self.coeffs), tuple(-x for x in self.coords))

    def __eq__(self, other):
        return isinstance(other, LatticeVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LatticeVector(coeffs={self.coeffs})"


def gram_schmidt(B: Basis):
    """Exact Gram-Schmidt of the basis columns.

    Returns (bstar, mu): the orthogonal vectors and the lower-triangular
    coefficients mu[i][j] = <b_i, b*_j> / <b*_j, b*_j> for j < i.
    """
    n = B.dim
    bstar: list[tuple[Fraction, ...]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms_sq: list[Fraction] = []
    for i in range(n):
        v = list(B.columns[i])
        for j in range(i):
            m = _dot(B.columns[i], bstar[j]) / norms_sq[j]
            mu[i][j] = m
            for k in range(n):
                v[k] -= m * bstar[j][k]
        vt = tuple(v)
        ns = l2_norm_sq(vt)
        if ns == 0:
            raise RankDeficient(f"column {i} is in the span of the previous columns")
        bstar.append(vt)
        norms_sq.append(ns)
    return bstar, mu


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _det_exact(cols) -> Fraction:
    n = len(cols)
    # row-major working copy of B (columns given)
    a = [[cols[j][i] for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _invert_exact(cols, det) -> list[list[Fraction]]:
    n = len(cols)
    a = [[cols[j][i] for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
