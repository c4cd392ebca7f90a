"""The full verification report, produced through the command-line entry point.

Run: python demos/05_verification_report.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import numpy as np

from sparsecode import BoundsParams, FieldSpec, random_code, verify_prop4
from sparsecode.cli import load_report, main
from sparsecode.codefile import save_code

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    code = random_code(FieldSpec(3), 12, 2, np.random.default_rng(4))
    save_code(code, tmp / "code.json")
    status = main(["verify", "--in", str(tmp / "code.json"), "--kmax", "4", "--seed", "1",
                   "--no-timestamp", "--out", str(tmp / "report.json")])
    doc = load_report(tmp / "report.json")
    print(f"verify exit status {status}; summary:",
          json.dumps(json.loads((tmp / "report.json").read_text())["summary"]))
    families = sorted({r.check.split("[")[0].split("@")[0] for r in doc.rows})
    print("row families:", ", ".join(families))
    print("\nrows that fail (all informational at this size):")
    for r in doc.rows.failures[:8]:
        print(f"  {r.check}: {r.lhs} {r.relation} {r.rhs}  {r.note}")

    print("\nProp 4 rows for the same code with t=1, gamma=1/3:")
    for r in verify_prop4(code, BoundsParams(t=1, gamma="1/3")):
        print(f"  {r.check}: {r.status}  {r.note}")
