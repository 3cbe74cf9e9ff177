"""
Approximate CVP: embedding for p >= 2, covering route for p < 2
===============================================================

For p >= 2 the target is absorbed into a Kannan embedding and solved as a
structured SVP.  For p < 2 norm equivalence is too lossy, so the solver
guesses the distance, covers the lp ball around the target by euclidean
balls, and runs a CVP_2 per center.
"""

from fractions import Fraction

import numpy as np

from lpsieve import Basis, CvpQuery, NormKind, approx_cvp_high, approx_cvp_low, exact_cvp

rng = np.random.default_rng(3)
B = Basis([[int(x) for x in col] for col in rng.integers(-5, 6, size=(4, 4))])
t = tuple(Fraction(int(rng.integers(-40, 41)), 7) for _ in range(4))
print("basis columns:", B.columns)
print("target:", tuple(str(x) for x in t))

# High route: p in {2, inf}.  The embedding appends t as an extra column
# with a small bottom-right entry, so short vectors of the bigger lattice
# encode close vectors of the original one.
for p in (2, "inf"):
    kind = NormKind(p)
    rep = approx_cvp_high(CvpQuery(basis=B, target=t, p=kind, epsilon=0.1, retries=4, seed=11))
    opt = exact_cvp(B, t, kind)
    print(f"\np={p}: found distance {rep.achieved_norm:.4f}, optimum {float(opt.value):.4f}")
    print(f"  lattice vector {tuple(str(x) for x in rep.best.coords)}")

# Low route: p in [1, 2).  Each distance guess r places euclidean balls of
# radius r/(a_eps sqrt(n)) * n^{1/2-1/p} over the lp ball around t and asks
# CVP_2 at every center; the first guess whose answer lands inside
# c(a_eps+1) r is accepted.
for p in ("1", "3/2"):
    kind = NormKind(p)
    rep = approx_cvp_low(CvpQuery(basis=B, target=t, p=kind, epsilon=0.1, retries=2, seed=11))
    opt = exact_cvp(B, t, kind)
    print(f"\np={p}: found distance {rep.achieved_norm:.4f}, optimum {float(opt.value):.4f}")
    if rep.extras.get("exact_hit"):
        print("  target was a lattice point (exact hit)")
    else:
        print(f"  a_eps = {rep.extras['a_eps']:.2f}, accepted guess {rep.extras['accepted_guess']:.4f}, "
              f"envelope {rep.extras['envelope']:.2f} x guess")
