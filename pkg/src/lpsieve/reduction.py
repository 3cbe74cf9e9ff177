"""Exact-rational LLL basis reduction.

No floating point inner loop: at desk-scale dimensions exactness is cheap and
removes rounding bugs entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Basis, Fraction as Scalar, l2_norm_sq, _dot


@dataclass(frozen=True)
class LllParams:
    delta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        d = Fraction(self.delta)
        object.__setattr__(self, "delta", d)
        if not (Fraction(1, 4) < d < 1):
            raise ValueError(f"delta must be in (1/4, 1), got {d}")


def lll_reduce(B: Basis, params: LllParams = LllParams()) -> Basis:
    """LLL-reduce the columns of B; same lattice, size-reduced, Lovasz-satisfying."""
    n = B.dim
    b = [list(col) for col in B.columns]
    delta = params.delta

    # incremental exact Gram-Schmidt state
    mu = [[Scalar(0)] * n for _ in range(n)]
    bstar_sq = [Scalar(0)] * n

    def update_gs(upto: int):
        bstar = []
        for i in range(upto):
            v = list(b[i])
            for j in range(i):
                m = _dot(b[i], bstar[j]) / bstar_sq[j]
                mu[i][j] = m
                for k in range(n):
                    v[k] -= m * bstar[j][k]
            bstar.append(tuple(v))
            bstar_sq[i] = l2_norm_sq(v)
        return bstar

    k = 1
    while k < n:
        update_gs(k + 1)
        # size-reduce b_k against b_{k-1}, ..., b_0
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = _round_half_even(mu[k][j])
                for i in range(n):
                    b[k][i] -= q * b[j][i]
                for i in range(j + 1):
                    mu[k][i] -= q * mu[j][i] if i < j else q
        if bstar_sq[k] >= (delta - mu[k][k - 1] ** 2) * bstar_sq[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            k = max(k - 1, 1)
    # a final sweep so every row is size-reduced against the settled order
    for k in range(1, n):
        update_gs(k + 1)
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = _round_half_even(mu[k][j])
                for i in range(n):
                    b[k][i] -= q * b[j][i]
                for i in range(j + 1):
                    mu[k][i] -= q * mu[j][i] if i < j else q
    return Basis(b)


def _round_half_even(x: Fraction) -> int:
    q = round(x)  # Fraction.__round__ is half-even and exact
    return int(q)
