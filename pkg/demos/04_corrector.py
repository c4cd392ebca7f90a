"""The self-corrector and the counting identities behind its analysis.

Run: python demos/04_corrector.py
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from sparsecode import (CorrectorInstance, FieldSpec, RandomSource, correction_error_exact,
                        corrector_run, lemma13_probability, prop11_check, prop12_check,
                        random_code, repetition_code)
from sparsecode.tester import QueryCountingOracle

rep = repetition_code(FieldSpec(3), 3)
inst = CorrectorInstance(rep, 2)
truth, v = (1, 1, 1), (1, 1, 2)
for i in range(3):
    print(f"Pr[corrected v_{i} is wrong] = {correction_error_exact(inst, v, truth, i)}")

oracle = QueryCountingOracle(v)
run = corrector_run(inst, oracle, 2, RandomSource(5))
print(f"corrected symbol 2 -> {run.value}; read coordinates {oracle.reads}")

code = random_code(FieldSpec(2), 30, 4, np.random.default_rng(3))
inst = CorrectorInstance(code, 5)
truth = code.words()[-1]
bad = list(truth.symbols)
bad[0] ^= 1
errs = [correction_error_exact(inst, bad, truth, i) for i in range(code.n)]
print(f"\n[30,4] binary code, one flipped bit, k=5: worst error {max(errs)} "
      f"= {float(max(errs)):.4f}; k*tau = {float(5 * Fraction(1, 30)):.4f}")
print("Pr[y_1 != 0 | y_0 != 0] =", lemma13_probability(inst, 5, 0, 1),
      "vs (k-1)/(n-1) =", Fraction(4, 29))

small = random_code(FieldSpec(3), 8, 2, np.random.default_rng(0))
print("\nProp 11 at k=3, i=0:", prop11_check(small, 3, 0).rows[0])
print("Prop 12 at k=3, (0,1):", prop12_check(small, 3, 0, 1).rows[0])
