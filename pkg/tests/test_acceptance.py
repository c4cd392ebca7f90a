"""Acceptance criteria, each at its stated tolerance.

Every check records a pass/fail line (printed in the terminal summary) and
then asserts, so a failing criterion shows up both in the summary and as a
failed test.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from fractions import Fraction
from math import comb

import numpy as np
import pytest

import sparsecode.cli as cli
from conftest import record, seeded_code
from oracles import brute_dual
from sparsecode import (BoundsParams, CorrectorInstance, FieldSpec, RandomSource,
                        code_from_generators, correction_error_exact, corrector_run, dual_slice,
                        krawtchouk_eval, krawtchouk_eval_rational, lemma6_deviation,
                        lemma13_probability, macwilliams_transform, prop11_check, prop12_check,
                        profile, rejection_probability_exact, rejection_probability_mc,
                        repetition_code, root_interval, soundness_profile, tester_new,
                        weight_distribution)
from sparsecode.errors import NoTestVectors
from sparsecode.krawtchouk import orthogonality_sum, sign_changes
from sparsecode.tester import QueryCountingOracle

# (q, n, d, seed): 24 codes spanning q in {2,3,5}, n <= 30, d <= 4.
MW_CODES = [
    (2, 30, 4, 1), (2, 28, 3, 2), (2, 24, 4, 3), (2, 20, 2, 4), (2, 16, 3, 5), (2, 12, 4, 6),
    (2, 9, 1, 7), (2, 6, 4, 8),
    (3, 30, 3, 9), (3, 25, 2, 10), (3, 20, 4, 11), (3, 15, 3, 12), (3, 12, 2, 13),
    (3, 9, 4, 14), (3, 6, 1, 15), (3, 4, 4, 16),
    (5, 18, 2, 17), (5, 15, 3, 18), (5, 12, 4, 19), (5, 10, 2, 20), (5, 8, 3, 21),
    (5, 6, 1, 22), (5, 5, 4, 23), (5, 3, 2, 24),
]


def test_criterion_1_macwilliams_exactness():
    start = time.perf_counter()
    mismatches = []
    for q, n, d, seed in MW_CODES:
        code = seeded_code(q, n, d, seed)
        dual = macwilliams_transform(weight_distribution(code), code.size, q, n)
        for k in range(min(5, n) + 1):
            got = len(dual_slice(code, k))
            if got != dual[k]:
                mismatches.append((q, n, d, seed, k, dual[k], got))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    record("1", "transform == enumeration, k <= 5", ok,
           f"{len(MW_CODES)} codes, {len(mismatches)} mismatches, {elapsed:.1f}s (budget 60s)")
    assert not mismatches
    assert elapsed < 60


def test_criterion_2_fixture_exactness():
    f = FieldSpec(3)
    rep = repetition_code(f, 3)
    inst = CorrectorInstance(rep, 2)
    values = {
        "dual distribution": (tuple(macwilliams_transform(weight_distribution(rep), 3, 3, 3)),
                              (1, 0, 6, 2)),
        "Rej_2((1,0,0))": (rejection_probability_exact(rep, 2, (1, 0, 0)), Fraction(2, 3)),
        "|[C^perp]_{2,0}|": (len(inst.slice_for(0)), 4),
        "Pr[y_1 != 0 | y_0 != 0]": (lemma13_probability(inst, 2, 0, 1), Fraction(1, 2)),
        "(k-1)/(n-1)": (Fraction(2 - 1, 3 - 1), Fraction(1, 2)),
        "error at i=0": (correction_error_exact(inst, (1, 1, 2), (1, 1, 1), 0), Fraction(1, 2)),
        "error at i=2": (correction_error_exact(inst, (1, 1, 2), (1, 1, 1), 2), 0),
    }
    bad = {k: v for k, v in values.items() if v[0] != v[1]}
    record("2", "hand-verified fixtures", not bad,
           f"{len(values) - len(bad)}/{len(values)} exact" + (f"; wrong: {bad}" if bad else ""))
    assert not bad


# -- criterion 3 -------------------------------------------------------------------------------

K3_GRID = [(q, n, k) for q in (2, 3, 5) for n in range(1, 26) for k in range(0, min(6, n) + 1)]


def test_criterion_3_identities():
    start = time.perf_counter()
    bad = []
    for q, n, k in K3_GRID:
        if krawtchouk_eval(k, 0, q, n) != comb(n, k) * (q - 1) ** k:
            bad.append(("P1", q, n, k))
        s = Fraction(q, q - 1)
        for i in range(n + 1):
            if krawtchouk_eval(k, i, q, n) != (1 - q) ** k * krawtchouk_eval_rational(k, n - i, s, n):
                bad.append(("P2", q, n, k, i))
        for l in range(k):
            if orthogonality_sum(q, n, k, l) != 0:
                bad.append(("orth", q, n, k, l))
    elapsed = time.perf_counter() - start
    record("3", "Property 1, Property 2, orthogonality", not bad and elapsed < 30,
           f"{len(K3_GRID)} (q,n,k) triples, {len(bad)} violations, {elapsed:.1f}s")
    assert not bad and elapsed < 30


def _sign_change_offenders():
    out = []
    for q, n, k in K3_GRID:
        if k == 0:
            continue
        iv = root_interval(k, q, n)
        lo, hi = iv.floor_mu1(), iv.ceil_mu2()
        row = [krawtchouk_eval(k, i, q, n) for i in range(n + 1)]
        if any(a < lo or b > hi for a, b in sign_changes(row)):
            out.append((q, n, k))
    return out


def _property_4c_offenders():
    out = []
    for q, n, k in K3_GRID:
        if k % 2 == 0:
            continue
        iv = root_interval(k, q, n)
        for i in range(n + 1):
            if not iv.at_most_mu2(i) and krawtchouk_eval(k, i, q, n) > 0:
                out.append((q, n, k, i))
    return out


def test_criterion_3_sign_changes_within_root_interval():
    bad = _sign_change_offenders()
    ratio = min((Fraction(k, n) for _, n, k in bad), default=None)
    record("3", "no sign change outside [floor mu1, ceil mu2]", not bad,
           f"{len(bad)} offending (q,n,k) triples"
           + (f", all with k/n >= {float(ratio):.2f}; first {bad[:4]}" if bad else ""))
    assert not bad


def test_criterion_3_property_4c():
    bad = _property_4c_offenders()
    ratio = min((Fraction(k, n) for _, n, k, _ in bad), default=None)
    record("3", "Property 4c sign beyond mu2 for odd k", not bad,
           f"{len(bad)} offending (q,n,k,i) points"
           + (f", all with k/n >= {float(ratio):.2f}; first {bad[:4]}" if bad else ""))
    assert not bad


# -- criterion 4 --------------------------------------------------------------------------------

def _test_codes():
    f3 = FieldSpec(3)
    simplex = code_from_generators(FieldSpec(2), 7, [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1],
                                                     [1, 0, 1, 0, 1, 0, 1]])
    return [repetition_code(f3, 3), repetition_code(FieldSpec(2), 6), simplex,
            seeded_code(3, 7, 2, 1), seeded_code(2, 10, 3, 2), seeded_code(5, 6, 2, 3),
            seeded_code(3, 9, 2, 4), seeded_code(2, 12, 2, 5)]


def test_criterion_4_completeness():
    checked, bad = 0, []
    for code in _test_codes():
        for k in range(1, min(code.n, 5) + 1):
            try:
                t = tester_new(code, k)
            except NoTestVectors:
                continue
            # every slice member against every codeword: the accept probability on C is 1
            rejecting = np.count_nonzero((t.slice.vectors @ code.codewords.T) % code.q)
            checked += len(t.slice) * code.size
            if rejecting:
                bad.append((code, k, int(rejecting)))
    record("4", "completeness by full enumeration", not bad,
           f"{checked} (y, c) pairs over {len(_test_codes())} codes, {len(bad)} rejections")
    assert not bad


def test_criterion_4_exhaustive_soundness():
    code = seeded_code(3, 7, 2, 1)
    prof = soundness_profile(code, 3)
    ok = prof.min_ratio is not None and prof.min_ratio > 0
    record("4", "exhaustive soundness, q=3 n=7 d=2 k=3", ok,
           f"min Rej/delta = {prof.min_ratio} over {prof.scanned} non-codewords")
    assert ok


def test_criterion_4_monte_carlo():
    passes, lines = 0, []
    for seed in range(10):
        q = (2, 3, 5)[seed % 3]
        n = (12, 9, 7)[seed % 3]
        code = seeded_code(q, n, 2, 100 + seed)
        v = np.random.default_rng(seed).integers(0, q, size=n)
        exact = rejection_probability_exact(code, 3, v)
        est = rejection_probability_mc(code, 3, v, 100_000, RandomSource(seed))
        hit = est.within(exact) or (est.stderr == 0 and est.estimate == exact)
        passes += hit
        lines.append(f"{float(exact):.4f}/{float(est.estimate):.4f}")
    record("4", "Monte Carlo within 3 SE at 1e5 trials", passes >= 9,
           f"{passes}/10 pairs within 3 SE (need 9)")
    assert passes >= 9


# -- criterion 5 ----------------------------------------------------------------------------------

def test_criterion_5_props_11_12():
    checked, bad = 0, []
    for code in _test_codes():
        p = profile(code)
        if p.min_distance_fraction is not None and p.min_distance_fraction * code.n < 2:
            continue
        for k in range(1, min(code.n, 5) + 1):
            for i in range(code.n):
                row = prop11_check(code, k, i).rows[0]
                checked += 1
                if not row.passed:
                    bad.append(row.check)
            if k >= 2:
                for i, j in itertools.combinations(range(code.n), 2):
                    row = prop12_check(code, k, i, j).rows[0]
                    checked += 1
                    if not row.passed:
                        bad.append(row.check)
    record("5", "Props 11/12 exact", not bad, f"{checked} identities, {len(bad)} failures")
    assert not bad and checked


def test_criterion_5_query_contract():
    runs, bad = 0, 0
    rs = RandomSource(0)
    for code in _test_codes():
        for k in range(2, min(code.n, 4) + 1):
            inst = CorrectorInstance(code, k)
            word = code.words()[-1]
            for i in range(code.n):
                if not len(inst.slice_for(i)):
                    continue
                for _ in range(3):
                    oracle = QueryCountingOracle(word)
                    run = corrector_run(inst, oracle, i, rs)
                    runs += 1
                    bad += run.queries != k - 1 or i in oracle.reads or run.value.value != word[i]
    record("5", "corrector reads k-1 coordinates, never i", bad == 0 and runs > 0,
           f"{runs} instrumented runs, {bad} violations")
    assert bad == 0 and runs


def _low_bias_code(q, n, d, seeds):
    best = None
    for s in seeds:
        c = seeded_code(q, n, d, s)
        b = profile(c).bias
        if best is None or b < best[0]:
            best = (b, c)
    return best[1]


def test_criterion_5_lemma14():
    k, n = 5, 30
    worst, bad, rows = Fraction(0), [], 0
    for q, d in ((2, 4), (3, 3)):
        code = _low_bias_code(q, n, d, range(200, 205))
        truth = code.words()[-1]
        v = list(truth.symbols)
        v[7] = (v[7] + 1) % q
        tau = Fraction(1, n)
        inst = CorrectorInstance(code, k)
        for i in range(n):
            if not len(inst.slice_for(i)):
                continue
            err = correction_error_exact(inst, v, truth, i)
            rows += 1
            worst = max(worst, err)
            if err > k * tau + Fraction(5, 100):
                bad.append((q, i, err))
    record("5", "Lemma 14: error <= k*tau + 0.05 (n=30, k=5)", not bad and rows > 0,
           f"{rows} indices, worst {float(worst):.4f} vs bound {float(5 * Fraction(1, 30) + Fraction(5, 100)):.4f}")
    assert not bad and rows


# -- criterion 6 -----------------------------------------------------------------------------------

def test_criterion_6_trend_report(tmp_path):
    k, q = 3, 3
    report = []
    for n in (15, 30, 45):
        code = _low_bias_code(q, n, 2, range(300, 310))
        dev6 = lemma6_deviation(code, k)
        dev13 = abs(lemma13_probability(code, k, 0, 1) - Fraction(k - 1, n - 1))
        report.append({"n": n, "bias": str(profile(code).bias), "lemma6": str(dev6),
                       "lemma13": str(dev13)})
    finite = all(math.isfinite(float(Fraction(r[key]))) for r in report
                 for key in ("lemma6", "lemma13"))
    trend6 = all(abs(Fraction(a["lemma6"])) >= abs(Fraction(b["lemma6"]))
                 for a, b in zip(report, report[1:]))
    trend13 = all(Fraction(a["lemma13"]) >= Fraction(b["lemma13"])
                  for a, b in zip(report, report[1:]))
    out = tmp_path / "trend.json"
    out.write_text(json.dumps({"rows": report, "lemma6NonIncreasing": trend6,
                               "lemma13NonIncreasing": trend13}, indent=2))
    summary = "; ".join(f"n={r['n']}: |dev6|={float(abs(Fraction(r['lemma6']))):.3g}, "
                        f"dev13={float(Fraction(r['lemma13'])):.3g}" for r in report)
    record("6", "trend report emitted (informational)", finite and out.exists(),
           f"{summary}; non-increasing lemma6={trend6}, lemma13={trend13}")
    assert finite


# -- criterion 7 ------------------------------------------------------------------------------------

def test_criterion_7_determinism(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = [cli.main(["verify", "--fixture", "repetition", "--seed", "11", "--no-timestamp",
                       "--out", str(p)]) for p in paths]
    same = paths[0].read_bytes() == paths[1].read_bytes()
    record("7", "verify twice, byte-identical", same and codes == [0, 0],
           f"exit codes {codes}, {len(paths[0].read_bytes())} bytes, identical={same}")
    assert same and codes == [0, 0]
