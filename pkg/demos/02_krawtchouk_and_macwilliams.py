"""Krawtchouk polynomials and the MacWilliams transform, checked against enumeration.

Run: python demos/02_krawtchouk_and_macwilliams.py
"""

from __future__ import annotations

import numpy as np

from sparsecode import (FieldSpec, dual_slice, krawtchouk_table, macwilliams_transform,
                        random_code, root_interval, verify_krawtchouk_properties,
                        weight_distribution)

q, n = 3, 6
table = krawtchouk_table(q, n, 3)
for k in range(4):
    print(f"P_{k}(i) for i=0..{n}:", table.row(k))

iv = root_interval(2, q, n)
print(f"\nroots of P_2 are expected in [{iv.mu1:.3f}, {iv.mu2:.3f}]")

# The dual weight distribution comes from the code's own weights alone.
code = random_code(FieldSpec(q), 12, 3, np.random.default_rng(1))
dual = macwilliams_transform(weight_distribution(code), code.size, q, code.n)
print("\ncode weights :", tuple(weight_distribution(code)))
print("dual weights :", tuple(dual))
print("enumerated   :", tuple(len(dual_slice(code, k)) for k in range(6)), "(k <= 5)")

rep = verify_krawtchouk_properties(3, 12, 6)
soft = [r.check for r in rep.failures]
print(f"\nKrawtchouk report for q=3, n=12, k<=6: {len(rep)} rows, hard verdict ok={rep.ok}")
print(f"informational rows that fail at this size: {soft}")
