"""LLL reduction: invariants and oracle cross-checks."""

from fractions import Fraction

import numpy as np
import pytest

from lpsieve import Basis, NormKind, exact_svp
from lpsieve.core import gram_schmidt, l2_norm_sq
from lpsieve.reduction import LllParams, lll_reduce

from protocols import rand_int_basis


def test_identity_fixed_point():
    B = Basis.identity(4)
    assert lll_reduce(B).columns == B.columns


def test_badly_skewed_2d():
    # columns (1,0) and (100,1): lambda_1 = 1, reduction must find it
    B = Basis([[1, 0], [100, 1]])
    R = lll_reduce(B)
    assert min(l2_norm_sq(c) for c in R.columns) == 1
    assert float(exact_svp(R, NormKind(2)).value) == 1.0


def test_det_invariance_and_same_lattice():
    rng = np.random.default_rng(3)
    for _ in range(8):
        B = rand_int_basis(4, rng)
        R = lll_reduce(B)
        assert abs(R.det) == abs(B.det)
        # every reduced column is an integer combination of B and vice versa
        for c in R.columns:
            assert B.coeffs_of(c) is not None
        for c in B.columns:
            assert R.coeffs_of(c) is not None


def test_size_reduction_and_lovasz():
    rng = np.random.default_rng(4)
    delta = Fraction(3, 4)
    for _ in range(6):
        R = lll_reduce(rand_int_basis(5, rng))
        bstar, mu = gram_schmidt(R)
        for i in range(5):
            for j in range(i):
                assert abs(mu[i][j]) <= Fraction(1, 2)
        for i in range(1, 5):
            lhs = l2_norm_sq(bstar[i]) + mu[i][i - 1] ** 2 * l2_norm_sq(bstar[i - 1])
            assert lhs >= delta * l2_norm_sq(bstar[i - 1])


def test_first_vector_quality_bound():
    # ||b_1|| <= 2^((n-1)/2) lambda_1 on random 6-dim bases
    rng = np.random.default_rng(9)
    for _ in range(3):
        R = lll_reduce(rand_int_basis(6, rng))
        lam1 = float(exact_svp(R, NormKind(2)).value)
        b1 = float(l2_norm_sq(R.columns[0])) ** 0.5
        assert b1 <= 2 ** 2.5 * lam1 * (1 + 1e-12)


def test_delta_validation():
    with pytest.raises(ValueError):
        LllParams(delta=Fraction(1, 4))
    with pytest.raises(ValueError):
        LllParams(delta=Fraction(1))
