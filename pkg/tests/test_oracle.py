"""Enumeration oracle: cross-checked against an independent brute-force scan."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from lpsieve import Basis, NormKind, exact_cvp, exact_svp
from lpsieve.core import lp_norm
from lpsieve.errors import DimensionTooLarge
from lpsieve.oracle import babai_rounding

from protocols import rand_int_basis, rand_target


def brute_svp(B: Basis, p: NormKind):
    """Exhaustive coefficient scan over a certified box around zero."""
    n = B.dim
    Bf = np.array([[float(x) for x in col] for col in zip(*B.columns)])
    d0 = min(lp_norm([float(x) for x in Bf[:, j]], p) for j in range(n))
    slack = n**0.5 if p.is_inf else n ** max(0.0, 0.5 - 1.0 / p.as_float())
    box = int(np.ceil(np.linalg.norm(np.linalg.inv(Bf), np.inf) * d0 * slack)) + 1
    best = None
    for coeffs in itertools.product(range(-box, box + 1), repeat=n):
        if all(c == 0 for c in coeffs):
            continue
        v = B.multiply(coeffs)
        val = lp_norm(v, p)
        if best is None or val < best[0] - 1e-12:
            best = (val, coeffs)
    return best


def brute_cvp(B: Basis, t, p: NormKind):
    """Scan a certified coefficient box around the rounded real solution."""
    n = B.dim
    Bf = np.array([[float(x) for x in col] for col in zip(*B.columns)])
    tf = np.array([float(Fraction(x)) for x in t])
    lam = np.linalg.solve(Bf, tf)
    center = np.round(lam).astype(int)
    diff = Bf @ center - tf
    d0 = lp_norm([float(x) for x in diff], p)  # the rounded point is a candidate
    # any better candidate c obeys ||c - lam||_inf <= ||B^-1||_inf * ||t - Bc||_2
    # and ||.||_2 <= n^max(0, 1/2 - 1/p) ||.||_p
    slack = n**0.5 if p.is_inf else n ** max(0.0, 0.5 - 1.0 / p.as_float())
    radius = int(np.ceil(np.linalg.norm(np.linalg.inv(Bf), np.inf) * d0 * slack)) + 1
    best = None
    for off in itertools.product(range(-radius, radius + 1), repeat=n):
        coeffs = tuple(int(c) for c in center + np.array(off))
        v = B.multiply(coeffs)
        val = lp_norm([a - b for a, b in zip(t, v)], p)
        if best is None or val < best[0] - 1e-12:
            best = (val, coeffs)
    return best


class TestExactSvp:
    def test_identity_any_p(self):
        for p in (NormKind(1), NormKind(2), NormKind(Fraction(3, 2)), NormKind("inf")):
            ans = exact_svp(Basis.identity(4), p)
            assert float(ans.value) == pytest.approx(1.0)
            if not p.is_inf:
                # unique shape of the optimizer: a signed unit vector
                assert sorted(abs(c) for c in ans.best.coeffs) == [0, 0, 0, 1]

    def test_2d_hand_case(self):
        B = Basis([[2, 0], [1, 2]])
        ans = exact_svp(B, NormKind(2))
        assert float(ans.value) == pytest.approx(2.0)
        assert brute_svp(B, NormKind(2))[0] == pytest.approx(2.0)

    def test_diag_linf(self):
        ans = exact_svp(Basis([[1, 0, 0], [0, 5, 0], [0, 0, 5]]), NormKind("inf"))
        assert float(ans.value) == pytest.approx(1.0)

    @pytest.mark.parametrize("p", ["1", "3/2", "2", "inf"])
    def test_matches_brute_force(self, p):
        kind = NormKind(Fraction(p) if p != "inf" else p)
        rng = np.random.default_rng(42)
        for _ in range(6):
            B = rand_int_basis(3, rng, -4, 4)
            ans = exact_svp(B, kind)
            assert float(ans.value) == pytest.approx(brute_svp(B, kind)[0], rel=1e-9)

    def test_dimension_guard(self):
        with pytest.raises(DimensionTooLarge):
            exact_svp(Basis.identity(11), NormKind(2))


class TestExactCvp:
    def test_target_in_lattice(self):
        B = Basis([[3, 1], [1, 4]])
        t = B.multiply([2, -1])
        ans = exact_cvp(B, t, NormKind(2))
        assert float(ans.value) == 0.0
        assert tuple(ans.best.coords) == tuple(t)

    def test_unit_cell_center(self):
        ans = exact_cvp(Basis.identity(2), [Fraction(1, 2), Fraction(1, 2)], NormKind("inf"))
        assert float(ans.value) == pytest.approx(0.5)

    @pytest.mark.parametrize("p", ["1", "3/2", "2", "inf"])
    def test_matches_brute_force(self, p):
        kind = NormKind(Fraction(p) if p != "inf" else p)
        rng = np.random.default_rng(43)
        for _ in range(6):
            B = rand_int_basis(3, rng, -4, 4)
            t = rand_target(3, rng, spread=15)
            ans = exact_cvp(B, t, kind)
            assert float(ans.value) == pytest.approx(brute_cvp(B, t, kind)[0], rel=1e-9)

    def test_certificate(self):
        # returned value is <= the norm of a spread of explicit lattice vectors
        rng = np.random.default_rng(44)
        B = rand_int_basis(3, rng)
        t = rand_target(3, rng)
        ans = exact_cvp(B, t, NormKind(1))
        for coeffs in itertools.product(range(-3, 4), repeat=3):
            v = B.multiply(coeffs)
            assert float(ans.value) <= lp_norm([a - b for a, b in zip(t, v)], NormKind(1)) + 1e-9


class TestBabai:
    def test_exact_on_identity(self):
        v = babai_rounding(Basis.identity(3), [Fraction(3, 2), Fraction(-1, 4), Fraction(9, 10)])
        assert v.coeffs == (2, 0, 1)

    def test_member_and_sane(self):
        rng = np.random.default_rng(45)
        for _ in range(10):
            B = rand_int_basis(4, rng)
            t = rand_target(4, rng)
            v = babai_rounding(B, t)
            assert B.coeffs_of(v.coords) == v.coeffs
            opt = float(exact_cvp(B, t, NormKind(2)).value)
            d = lp_norm([a - b for a, b in zip(t, v.coords)], NormKind(2))
            assert d >= opt - 1e-12
