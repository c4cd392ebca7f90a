from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sparsecode import (FieldSpec, code_from_generators, random_code,  # noqa: E402
                        repetition_code, zero_code)


def seeded_code(q: int, n: int, d: int, seed: int):
    return random_code(FieldSpec(q), n, d, np.random.default_rng(seed))


@pytest.fixture
def f3() -> FieldSpec:
    return FieldSpec(3)


@pytest.fixture
def rep3(f3):
    """Ternary repetition code of length 3."""
    return repetition_code(f3, 3)


@pytest.fixture
def zero5():
    return zero_code(FieldSpec(3), 5)


@pytest.fixture
def simplex3():
    """Binary [7,3] simplex code: every nonzero codeword has weight 4."""
    rows = [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]]
    return code_from_generators(FieldSpec(2), 7, rows)


SMALL_CODES = [(2, 6, 2, 1), (2, 8, 3, 2), (3, 5, 2, 3), (3, 6, 1, 4), (5, 4, 2, 5), (3, 7, 2, 6)]


@pytest.fixture(params=SMALL_CODES, ids=lambda p: f"q{p[0]}n{p[1]}d{p[2]}s{p[3]}")
def small_code(request):
    return seeded_code(*request.param)


# -- acceptance summary -----------------------------------------------------------------

ACCEPTANCE: dict[str, dict[str, tuple[bool, str]]] = {}


def record(criterion: str, part: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, {})[part] = (bool(ok), detail)
    print(f"criterion {criterion} [{part}]: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=int):
        parts = ACCEPTANCE[crit]
        ok = all(p[0] for p in parts.values())
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        for name, (p_ok, detail) in parts.items():
            tr.write_line(f"    {name}: {'pass' if p_ok else 'FAIL'}  {detail}")
