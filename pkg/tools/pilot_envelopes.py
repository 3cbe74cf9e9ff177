"""Pilot runs for pinning quality envelopes.

Runs the seeded acceptance protocols and prints the observed ratio
distributions; the constants in tests/pinned.py were chosen from this output
with headroom above the 90th percentile.

Usage: python tools/pilot_envelopes.py
"""

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from protocols import cvp_high_ratios, cvp_low_runs, svp_inf_ratios  # noqa: E402


def describe(name, ratios):
    r = np.array(ratios)
    print(
        f"{name}: count={len(r)} max={r.max():.4f} p90={np.percentile(r, 90):.4f} "
        f"median={np.median(r):.4f} mean={r.mean():.4f}"
    )


def main():
    t0 = time.time()
    describe("svp_inf n=5", svp_inf_ratios())
    print(f"  [{time.time() - t0:.1f}s]")
    t0 = time.time()
    describe("cvp_inf n=4", cvp_high_ratios("inf"))
    describe("cvp_2   n=4", cvp_high_ratios(2))
    print(f"  [{time.time() - t0:.1f}s]")
    t0 = time.time()
    for p in ("1", "3/2"):
        ratios, env = cvp_low_runs(p)
        describe(f"cvp_{p} n=4", ratios)
        print(f"  envelope holds: {sum(env)}/{len(env)}")
    print(f"  [{time.time() - t0:.1f}s]")


if __name__ == "__main__":
    main()
