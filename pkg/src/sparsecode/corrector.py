"""The canonical dual-sampling self-corrector and its counting identities.

To recover coordinate ``i`` the corrector draws ``y`` uniformly from the
weight-``k`` dual codewords with ``y_i != 0`` and returns

    (-y_i)^-1 * sum_{j != i} y_j v_j,

which equals ``c_i`` whenever ``v`` agrees with the codeword ``c`` on the
support of ``y`` (because ``sum_j y_j c_j = 0``).  It reads ``k - 1``
coordinates and never coordinate ``i`` itself.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .code import (DualSlice, LinearCode, as_word, dual_slice, profile, puncture)
from .errors import NoCorrectionVectors, PreconditionError
from .field import FieldElement
from .report import ReportRow, VerificationReport
from .tester import MonteCarloEstimate, RandomSource, _oracle


class CorrectorInstance:
    """Corrector for one code and weight; per-index slices are built on first use."""

    def __init__(self, code: LinearCode, k: int):
        if not 0 < k <= code.n:
            raise ValueError(f"k={k} outside (0, {code.n}]")
        self.code = code
        self.k = k
        self._slices: dict[int, DualSlice] = {}
        self._lock = threading.Lock()

    def slice_for(self, i: int) -> DualSlice:
        if not 0 <= i < self.code.n:
            raise IndexError(f"index {i} out of range for length {self.code.n}")
        with self._lock:
            sl = self._slices.get(i)
            if sl is None:
                sl = self._slices[i] = dual_slice(self.code, self.k, {i})
        return sl

    def _nonempty(self, i: int) -> DualSlice:
        sl = self.slice_for(i)
        if len(sl) == 0:
            raise NoCorrectionVectors(
                f"no weight-{self.k} dual codeword is nonzero at index {i}")
        return sl


def _instance(c, k: int | None = None) -> CorrectorInstance:
    if isinstance(c, CorrectorInstance):
        return c
    return CorrectorInstance(c, k)


class CorrectionRun(NamedTuple):
    value: FieldElement
    queries: int


def corrector_run(c: CorrectorInstance, v, i: int, rng: RandomSource) -> CorrectionRun:
    """Estimate coordinate ``i`` of the codeword nearest to ``v``."""
    sl = c._nonempty(i)
    oracle = _oracle(v, c.code)
    before = oracle.queries
    y = sl.vectors[rng.index(len(sl))]
    acc = 0
    for j in np.flatnonzero(y):
        if j != i:
            acc += int(y[j]) * oracle[int(j)]
    f = c.code.field
    value = f(acc) * f(-int(y[i])).inverse()
    return CorrectionRun(value, oracle.queries - before)


def _error_vector(c: CorrectorInstance, v, truth) -> np.ndarray:
    code = c.code
    truth = as_word(code.field, truth)
    if truth not in code:
        raise PreconditionError("truth is not a codeword")
    v = as_word(code.field, v)
    return (v.as_array() - truth.as_array()) % code.q


def correction_error_exact(c: CorrectorInstance, v, truth, i: int) -> Fraction:
    """Exact ``Pr[SC(i) != truth_i]``: the fraction of ``y`` with ``sum_{j!=i} y_j e_j != 0``."""
    sl = c._nonempty(i)
    e = _error_vector(c, v, truth)
    e[i] = 0
    wrong = np.count_nonzero(sl.vectors @ e % c.code.q)
    return Fraction(int(wrong), len(sl))


def support_hit_fraction(c: CorrectorInstance, v, truth, i: int) -> Fraction:
    """Fraction of ``y`` whose support meets the error positions other than ``i``."""
    sl = c._nonempty(i)
    e = _error_vector(c, v, truth)
    e[i] = 0
    hit = np.count_nonzero((sl.vectors != 0) & (e != 0), axis=1)
    return Fraction(int(np.count_nonzero(hit)), len(sl))


def _slice_count(code: LinearCode, k: int, required=()) -> int:
    if k > code.n:
        return 0
    return len(dual_slice(code, k, required))


def _punctured_count(code: LinearCode, k: int, drop: set[int]) -> int:
    if code.n - len(drop) == 0:
        return 1 if k == 0 else 0  # only the empty word remains
    return _slice_count(puncture(code, drop), k)


def _no_weight_one(code: LinearCode) -> bool:
    prof = profile(code)
    return prof.min_distance_fraction is None or prof.min_distance_fraction * code.n >= 2


def prop11_check(code: LinearCode, k: int, i: int) -> VerificationReport:
    """``|[C^perp]_{k,i}| = |[C^perp]_k| - |[(C^-i)^perp]_k|`` by independent enumerations."""
    if not 0 <= i < code.n:
        raise IndexError(f"index {i} out of range for length {code.n}")
    rep = VerificationReport()
    name = f"prop11[k={k},i={i}]"
    if not _no_weight_one(code):
        rep.add(ReportRow.gated(name, "hypothesis not met: code has a weight-1 codeword"))
        return rep
    lhs = _slice_count(code, k, {i}) if k >= 1 else 0
    rhs = _slice_count(code, k) - _punctured_count(code, k, {i})
    rep.add(ReportRow.compare(name, lhs, rhs, "=="))
    return rep


def prop12_check(code: LinearCode, k: int, i: int, j: int) -> VerificationReport:
    """Inclusion-exclusion count of dual codewords nonzero at both ``i`` and ``j``."""
    if i == j:
        raise IndexError("i and j must differ")
    for idx in (i, j):
        if not 0 <= idx < code.n:
            raise IndexError(f"index {idx} out of range for length {code.n}")
    lhs = _slice_count(code, k, {i, j}) if k >= 2 else 0
    rhs = (_slice_count(code, k) - _punctured_count(code, k, {i})
           - _punctured_count(code, k, {j}) + _punctured_count(code, k, {i, j}))
    rep = VerificationReport()
    rep.add(ReportRow.compare(f"prop12[k={k},i={i},j={j}]", lhs, rhs, "=="))
    return rep


def lemma13_probability(code, k: int, i: int, j: int) -> Fraction:
    """``Pr[y_j != 0]`` for ``y`` uniform over the dual words of weight k nonzero at ``i``."""
    if i == j:
        raise IndexError("i and j must differ")
    c = _instance(code, k)
    sl = c._nonempty(i)
    return Fraction(int(np.count_nonzero(sl.vectors[:, j])), len(sl))


def lemma13_report(code, k: int, i: int, j: int, slack=Fraction(1, 10)) -> VerificationReport:
    c = _instance(code, k)
    p = lemma13_probability(c, k, i, j)
    target = Fraction(k - 1, c.code.n - 1)
    rep = VerificationReport()
    rep.add(ReportRow.compare(f"lemma13.deviation[k={k},i={i},j={j}]", abs(p - target),
                              Fraction(slack), hard=False,
                              note=f"Pr[y_j != 0] = {p}; (k-1)/(n-1) = {target}"))
    return rep


def lemma14_bound_check(code, k: int, v, truth, i: int, slack=Fraction(0)) -> VerificationReport:
    """Exact correction error at ``i`` against ``k * tau`` with ``tau = delta(v, truth)``.

    The support-intersection row is exact at every n and is hard; the rows
    against ``k * tau`` carry an asymptotic slack and are informational.
    """
    c = _instance(code, k)
    n = c.code.n
    err = correction_error_exact(c, v, truth, i)
    tau = Fraction(int(np.count_nonzero(_error_vector(c, v, truth))), n)
    slack = Fraction(slack)
    rep = VerificationReport()
    rep.add(ReportRow.compare(f"lemma14.support_event[i={i}]", err,
                              support_hit_fraction(c, v, truth, i), "<=",
                              note="wrong answer needs an error on supp(y) minus i"))
    rep.add(ReportRow.compare(f"lemma14.k_tau[i={i}]", err, k * tau + slack, hard=False,
                              note=f"tau={tau}, slack={slack}"))
    if tau < Fraction(1, 2 * k):
        rep.add(ReportRow.compare(f"lemma14.theorem[i={i}]", err, k * tau + slack, hard=False,
                                  note=f"tau={tau} < 1/(2k)"))
    else:
        rep.add(ReportRow.gated(f"lemma14.theorem[i={i}]",
                                f"tau={tau} is not below 1/(2k)", err, k * tau + slack))
    return rep


def correction_error_mc(c: CorrectorInstance, v, truth, i: int, trials: int,
                        rng: RandomSource):
    """Monte Carlo estimate of ``Pr[SC(i) != truth_i]`` from ``trials`` seeded draws."""
    if trials < 1:
        raise ValueError("trials must be positive")
    sl = c._nonempty(i)
    e = _error_vector(c, v, truth)
    e[i] = 0
    wrong = (sl.vectors @ e % c.code.q) != 0
    hits = int(wrong[rng.generator.integers(len(sl), size=trials)].sum())
    p = Fraction(hits, trials)
    return MonteCarloEstimate(p, math.sqrt(float(p * (1 - p)) / trials), trials, rng.seed)
