"""
Covering constants walkthrough
==============================

How the covering-number toolbox turns a quality target eps into a concrete
scale a_eps, and how the grid cover realizes the bound in low dimension.
"""

import math

import numpy as np

from lpsieve import (
    covering_exponent_l1,
    covering_exponent_linf,
    greedy_grid_cover,
    intrinsic_volumes_B1,
    solve_a_eps_l1,
    solve_a_eps_linf,
    solve_phi,
    steiner_volume,
    unit_ball_volume,
)

# The cubic (1 - phi^2)/phi^3 = 2a^2/pi ties the cap height phi to the box
# scale a.  phi decays like a^{-2/3}, which is what makes the exponent go
# to zero for large boxes.
print("a, phi(a), bound (pi/2)^(1/3) a^(-2/3):")
for a in np.geomspace(0.5, 100, 6):
    phi = solve_phi(float(a))
    print(f"  {a:8.2f}  {phi:.5f}  {(math.pi / 2) ** (1 / 3) * a ** (-2 / 3):.5f}")

# The covering exponent is the base-2 growth rate per dimension of the
# number of cubes of half-width a needed to cover the unit ball.  Larger
# boxes cover more cheaply.
print("\na, covering_exponent_linf(a):")
for k in range(0, 12, 2):
    a = float(2**k)
    print(f"  {a:8.1f}  {covering_exponent_linf(a):.5f}")

# Inverting the exponent gives the scale needed to hit a target rate eps.
for eps in (0.401, 0.1, 0.05):
    a = solve_a_eps_linf(eps)
    c = solve_a_eps_l1(eps)
    print(f"\neps = {eps}:")
    print(f"  a_eps (cube/ball)  = {a:12.4f}  exponent {covering_exponent_linf(a):.6f}")
    print(f"  c_eps (l1-ball)    = {c:12.4f}  exponent {covering_exponent_l1(c):.6f}")

# The l1 bound comes from a Steiner volume: vol(B_1^n + r B_2^n) expands as
# a polynomial in r whose coefficients are the intrinsic volumes of the
# cross-polytope.
n = 3
V = intrinsic_volumes_B1(n)
print(f"\nintrinsic volumes of B_1^{n}: {[round(v, 6) for v in V]}")
eps = 0.1
c = solve_a_eps_l1(eps)
r = c / math.sqrt(n)
ratio = steiner_volume(V, r, n) / (unit_ball_volume(n) * r**n)
print(f"volume ratio at c_eps/sqrt(n): {ratio:.4f}  (bound n^2 2^(eps n) = {n * n * 2 ** (eps * n):.4f})")

# In dimension 2 the greedy cover actually builds the centers and verifies
# coverage point by point.
for a in (0.5, 1.0):
    gc = greedy_grid_cover(2, a)
    print(f"\ngrid cover n=2, a={a}: {len(gc.centers)} centers, step 1/{2}")
    for cen in gc.centers[:4]:
        print(f"  center {tuple(str(x) for x in cen)}")
