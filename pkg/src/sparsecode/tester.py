"""The canonical dual-sampling tester.

A test draws ``y`` uniformly from the weight-``k`` dual codewords, reads
``v`` on the support of ``y`` and accepts iff ``<y, v> = 0``.  Codewords are
always accepted; a non-codeword ``v`` is rejected with probability
``1 - |[(C||v)^perp]_k| / |[C^perp]_k|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .code import (DualSlice, LinearCode, Word, as_word, dual_slice, span_with,
                   weight_distribution)
from .errors import MacWilliamsViolation, NoTestVectors, ScanTooLarge
from .krawtchouk import macwilliams_transform

SCAN_LIMIT = 10**7


class RandomSource:
    """Seeded PCG64 stream; the same seed gives the same draws on every platform."""

    def __init__(self, seed: int):
        self.seed = int(seed) & (2**64 - 1)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def index(self, m: int) -> int:
        """Uniform integer in ``[0, m)``."""
        return int(self.generator.integers(m))

    def derive(self, trial: int) -> RandomSource:
        """Independent stream for trial ``trial``, so parallel trials stay order-free."""
        child = RandomSource.__new__(RandomSource)
        child.seed = self.seed
        child.generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, trial])))
        return child


class QueryCountingOracle:
    """Read-only view of a word that records every coordinate read."""

    def __init__(self, word: Word):
        self._word = word
        self.reads: list[int] = []

    def __getitem__(self, j: int) -> int:
        self.reads.append(j)
        return self._word[j]

    def __len__(self) -> int:
        return len(self._word)

    @property
    def queries(self) -> int:
        return len(self.reads)


def _oracle(v, code: LinearCode):
    if isinstance(v, QueryCountingOracle):
        return v
    return QueryCountingOracle(as_word(code.field, v))


@dataclass(frozen=True)
class TesterInstance:
    code: LinearCode
    k: int
    slice: DualSlice


def tester_new(code: LinearCode, k: int) -> TesterInstance:
    if not 0 < k <= code.n:
        raise ValueError(f"k={k} outside (0, {code.n}]")
    sl = dual_slice(code, k)
    if len(sl) == 0:
        raise NoTestVectors(f"the dual code has no codewords of weight {k}")
    return TesterInstance(code, k, sl)


class TestRun(NamedTuple):
    accepted: bool
    queries: int


def tester_run(t: TesterInstance, v, rng: RandomSource) -> TestRun:
    """One run of the tester with oracle access to ``v``."""
    oracle = _oracle(v, t.code)
    before = oracle.queries
    y = t.slice.vectors[rng.index(len(t.slice))]
    q = t.code.q
    acc = 0
    for j in np.flatnonzero(y):
        acc += int(y[j]) * oracle[int(j)]
    return TestRun(acc % q == 0, oracle.queries - before)


def _orthogonal_mask(vectors: np.ndarray, words: np.ndarray, q: int) -> np.ndarray:
    """``mask[w, y]`` is True when ``<y, w> = 0``."""
    return (np.atleast_2d(words) @ vectors.T) % q == 0


def rejection_probability_exact(code: LinearCode, k: int, v) -> Fraction:
    """``1 - B_k((C||v)^perp) / B_k(C^perp)``; exactly 0 for codewords.

    Both counts come from brute-force enumeration and are cross-checked
    against the MacWilliams transform of ``C`` and ``C||v``.
    """
    v = as_word(code.field, v)
    if v in code:
        return Fraction(0)
    base = len(dual_slice(code, k))
    if base == 0:
        raise NoTestVectors(f"the dual code has no codewords of weight {k}")
    wide = span_with(code, v)
    kept = len(dual_slice(wide, k))
    q, n = code.q, code.n
    mw_base = macwilliams_transform(weight_distribution(code), code.size, q, n)[k]
    mw_kept = macwilliams_transform(weight_distribution(wide), wide.size, q, n)[k]
    if (mw_base, mw_kept) != (base, kept):
        raise MacWilliamsViolation(
            f"enumeration ({base}, {kept}) disagrees with MacWilliams ({mw_base}, {mw_kept})")
    return 1 - Fraction(kept, base)


class MonteCarloEstimate(NamedTuple):
    estimate: Fraction
    stderr: float
    trials: int
    seed: int

    def within(self, exact, sigmas: float = 3.0) -> bool:
        return abs(float(self.estimate - Fraction(exact))) <= sigmas * self.stderr


def rejection_probability_mc(code: LinearCode, k: int, v, trials: int,
                             rng: RandomSource) -> MonteCarloEstimate:
    """Fraction of rejecting runs over ``trials`` independent tests."""
    if trials < 1:
        raise ValueError("trials must be positive")
    t = tester_new(code, k)
    v = as_word(code.field, v)
    rejects = ~_orthogonal_mask(t.slice.vectors, v.as_array(), code.q)[0]
    draws = rng.generator.integers(len(t.slice), size=trials)
    hits = int(rejects[draws].sum())
    p = Fraction(hits, trials)
    return MonteCarloEstimate(p, math.sqrt(float(p * (1 - p)) / trials), trials, rng.seed)


@dataclass(frozen=True)
class SoundnessProfile:
    """Minimum of ``Rej_k(v) / delta(v, C)`` over the scanned non-codewords."""

    min_ratio: Fraction | None
    witness: Word | None
    witness_rejection: Fraction | None
    witness_distance: Fraction | None
    scanned: int

    @property
    def empty_domain(self) -> bool:
        return self.min_ratio is None


def _all_words(q: int, n: int, chunk: int):
    total = q**n
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield (idx[:, None] // powers) % q


def soundness_profile(code: LinearCode, k: int,
                      words: Sequence | None = None, chunk: int = 4096) -> SoundnessProfile:
    """Finite-n soundness constant of the tester (exhaustive over F_q^n unless ``words`` given).

    Uses ``Rej_k(v) = |{y in [C^perp]_k : <y, v> != 0}| / |[C^perp]_k|``,
    which counts ``[(C||v)^perp]_k`` as the members orthogonal to ``v``.
    """
    q, n = code.q, code.n
    if words is None:
        if q**n > SCAN_LIMIT:
            raise ScanTooLarge(f"q^n = {q**n} words exceeds the scan limit {SCAN_LIMIT}")
        batches = _all_words(q, n, chunk)
    else:
        arr = np.array([as_word(code.field, w).symbols for w in words], dtype=np.int64)
        batches = (arr[s:s + chunk] for s in range(0, len(arr), chunk))
    t = tester_new(code, k)
    m = len(t.slice)
    cw = code.codewords
    best = None
    scanned = 0
    for batch in batches:
        batch = batch.reshape(-1, n)
        dist = np.array([np.count_nonzero(cw != w, axis=1).min() for w in batch])
        rej = np.count_nonzero(~_orthogonal_mask(t.slice.vectors, batch, q), axis=1)
        for row in np.flatnonzero(dist > 0):
            scanned += 1
            ratio = Fraction(int(rej[row]) * n, m * int(dist[row]))
            if best is None or ratio < best[0]:
                best = (ratio, batch[row], Fraction(int(rej[row]), m), Fraction(int(dist[row]), n))
    if best is None:
        return SoundnessProfile(None, None, None, None, 0)
    ratio, w, rej_w, dist_w = best
    return SoundnessProfile(ratio, Word.from_array(code.field, w), rej_w, dist_w, scanned)
