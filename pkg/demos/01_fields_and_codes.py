"""Prime fields, small linear codes and their exact profiles.

Run: python demos/01_fields_and_codes.py
"""

from __future__ import annotations

import numpy as np

from sparsecode import (FieldSpec, distance_to_code, profile, random_code, repetition_code,
                        weight_distribution, zero_code)
from sparsecode.codefile import code_to_json

f = FieldSpec(5)
a, b = f(3), f(4)
print(f"In F_5: 3 + 4 = {a + b}, 3 * 4 = {a * b}, 1/3 = {a.inverse()}")

# The ternary repetition code has two nonzero codewords, both of full weight.
rep = repetition_code(FieldSpec(3), 3)
print("\nrepetition code codewords:", rep.codewords.tolist())
print("weight distribution:", tuple(weight_distribution(rep)))
p = profile(rep)
print(f"relative distance {p.min_distance_fraction}, bias {p.bias}")

# Sparse random codes: dimension d means q^d codewords, all of them enumerated.
code = random_code(FieldSpec(3), 20, 3, np.random.default_rng(7))
p = profile(code)
print(f"\nrandom [20,3] ternary code: |C|={p.size}, delta={p.min_distance_fraction}, "
      f"bias={p.bias}, log|C|/log n={p.sparsity_exponent:.3f}")

v = code.codewords[5].copy()
v[:3] = (v[:3] + 1) % 3
d, nearest = distance_to_code(code, v)
print(f"a codeword with 3 symbols bumped sits at distance {d} from the code")

print("\nzero code profile:", profile(zero_code(FieldSpec(2), 4)))
print("\ncode file:", code_to_json(rep), end="")
