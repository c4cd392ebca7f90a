"""The dual-sampling tester: exact rejection, sampling, and the soundness constant.

Run: python demos/03_tester.py
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from sparsecode import (FieldSpec, RandomSource, distance_to_code, random_code,
                        rejection_probability_exact, rejection_probability_mc, repetition_code,
                        soundness_profile, tester_new, tester_run)

rep = repetition_code(FieldSpec(3), 3)
t = tester_new(rep, 2)
print("weight-2 dual codewords:", [m.symbols for m in t.slice.members])
print("Rej_2((1,0,0)) =", rejection_probability_exact(rep, 2, (1, 0, 0)))

rs = RandomSource(0)
runs = [tester_run(t, (1, 0, 0), rs) for _ in range(10)]
print("ten runs accept?", [r.accepted for r in runs], "queries each:", {r.queries for r in runs})

code = random_code(FieldSpec(3), 7, 2, np.random.default_rng(1))
v = (1, 2, 0, 0, 1, 0, 2)
exact = rejection_probability_exact(code, 3, v)
est = rejection_probability_mc(code, 3, v, 100_000, RandomSource(42))
dist, _ = distance_to_code(code, v)
print(f"\n[7,2] code, v at distance {dist}: exact {exact} = {float(exact):.5f}, "
      f"sampled {float(est.estimate):.5f} +/- {est.stderr:.5f}")

prof = soundness_profile(code, 3)
print(f"min Rej_3(v)/delta(v,C) over all {prof.scanned} non-codewords: {prof.min_ratio}"
      f" = {float(prof.min_ratio):.4f}, attained at {prof.witness.symbols}")
print("hence every word at distance 1/7 is rejected with probability at least",
      prof.min_ratio * Fraction(1, 7))
