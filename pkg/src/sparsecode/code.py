"""Linear codes over F_q, stored fully enumerated.

Sparse codes (``|C| <= n^t``) are small enough that every codeword can be
listed, which is what makes exact weight distributions, distances and biases
computable.  The dual code is never listed; low-weight dual codewords are
found by brute force over supports (:func:`dual_slice`).
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import comb, log
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyBlock, FieldMismatch, ScanTooLarge
from .field import FieldElement, FieldSpec

log_ = logging.getLogger(__name__)

DEFAULT_GUARD_LIMIT = 10**8
GUARD_ENV = "SPARSECODE_GUARD_LIMIT"


def guard_limit() -> int:
    """Maximum number of candidates any exhaustive scan may visit."""
    raw = os.environ.get(GUARD_ENV)
    return int(raw) if raw else DEFAULT_GUARD_LIMIT


@dataclass(frozen=True)
class Word:
    """A vector in F_q^n."""

    field: FieldSpec
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        q = self.field.q
        symbols = tuple(int(s) for s in self.symbols)
        for s in symbols:
            if not 0 <= s < q:
                raise ValueError(f"symbol {s} is not a residue mod {q}")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def from_array(cls, field: FieldSpec, values) -> Word:
        return cls(field, tuple(int(v) % field.q for v in np.asarray(values).ravel()))

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, j: int) -> int:
        return self.symbols[j]

    def __iter__(self):
        return iter(self.symbols)

    def element(self, j: int) -> FieldElement:
        return FieldElement(self.symbols[j], self.field)

    @property
    def weight(self) -> int:
        return sum(1 for s in self.symbols if s)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, s in enumerate(self.symbols) if s)

    def _check(self, other: Word) -> None:
        if other.field != self.field:
            raise FieldMismatch(f"F_{self.field.q} vs F_{other.field.q}")
        if len(other) != len(self):
            raise ValueError(f"length {len(self)} vs {len(other)}")

    def __add__(self, other: Word) -> Word:
        self._check(other)
        q = self.field.q
        return Word(self.field, tuple((a + b) % q for a, b in zip(self, other)))

    def __sub__(self, other: Word) -> Word:
        self._check(other)
        q = self.field.q
        return Word(self.field, tuple((a - b) % q for a, b in zip(self, other)))

    def scale(self, a: int) -> Word:
        q = self.field.q
        return Word(self.field, tuple(a * s % q for s in self.symbols))

    def dot(self, other: Word) -> int:
        self._check(other)
        return sum(a * b for a, b in zip(self, other)) % self.field.q

    def as_array(self) -> np.ndarray:
        return np.array(self.symbols, dtype=np.int64)

    def __repr__(self) -> str:
        return f"Word(q={self.field.q}, {self.symbols})"


def as_word(field: FieldSpec, values) -> Word:
    """Coerce a Word, FieldElement sequence or int sequence into a Word."""
    if isinstance(values, Word):
        if values.field != field:
            raise FieldMismatch(f"word over F_{values.field.q}, expected F_{field.q}")
        return values
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            if v.field != field:
                raise FieldMismatch(f"element of F_{v.field.q}, expected F_{field.q}")
            v = v.value
        out.append(int(v))
    return Word(field, tuple(out))


def zero_word(field: FieldSpec, n: int) -> Word:
    return Word(field, (0,) * n)


def _reduce_against(basis: list[tuple[int, np.ndarray]], row: np.ndarray, q: int) -> np.ndarray:
    row = row.copy()
    for pivot, brow in basis:
        if row[pivot]:
            row = (row - row[pivot] * brow) % q
    return row


def independent_rows(rows: np.ndarray, q: int) -> list[int]:
    """Indices of a maximal independent prefix-greedy subset of ``rows``."""
    basis: list[tuple[int, np.ndarray]] = []
    keep = []
    for idx, row in enumerate(rows):
        r = _reduce_against(basis, row % q, q)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            continue
        pivot = int(nz[0])
        r = r * pow(int(r[pivot]), -1, q) % q
        # keep the basis fully reduced so later rows need one pass
        basis = [(p, (b - b[pivot] * r) % q) for p, b in basis]
        basis.append((pivot, r))
        keep.append(idx)
    return keep


def rank(rows, q: int) -> int:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return 0
    return len(independent_rows(rows, q))


class LinearCode:
    """A linear code given by generator rows, with every codeword cached.

    Attributes:
        field: the base field.
        n: block length.
        generators: ``d x n`` array of independent rows.
        dropped_rows: indices of input rows discarded as linearly dependent.
        codewords: ``q^d x n`` array; row ``r`` is the combination whose
            coefficient vector is ``r`` written in base ``q`` (most significant
            coefficient first), so row 0 is the zero word.
    """

    def __init__(self, field: FieldSpec, n: int, generators: np.ndarray,
                 dropped_rows: tuple[int, ...] = ()):
        self.field = field
        self.n = n
        generators = np.asarray(generators, dtype=np.int64).reshape(-1, n)
        generators.setflags(write=False)
        self.generators = generators
        self.dropped_rows = tuple(dropped_rows)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dimension(self) -> int:
        return self.generators.shape[0]

    @property
    def size(self) -> int:
        return self.q**self.dimension

    def __len__(self) -> int:
        return self.size

    @cached_property
    def codewords(self) -> np.ndarray:
        if self.size > guard_limit():
            raise ScanTooLarge(f"code has {self.size} codewords, above the guard {guard_limit()}")
        coeffs = np.array(list(itertools.product(range(self.q), repeat=self.dimension)),
                          dtype=np.int64).reshape(self.size, self.dimension)
        words = coeffs @ self.generators % self.q
        words.setflags(write=False)
        return words

    @cached_property
    def weights(self) -> np.ndarray:
        return np.count_nonzero(self.codewords, axis=1)

    def words(self) -> list[Word]:
        return [Word.from_array(self.field, w) for w in self.codewords]

    def generator_words(self) -> list[Word]:
        return [Word.from_array(self.field, g) for g in self.generators]

    def __contains__(self, v) -> bool:
        v = as_word(self.field, v)
        if len(v) != self.n:
            return False
        if self.dimension == 0:
            return v.weight == 0
        stacked = np.vstack([self.generators, v.as_array()])
        return rank(stacked, self.q) == self.dimension

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        if (self.field, self.n, self.dimension) != (other.field, other.n, other.dimension):
            return False
        return all(Word.from_array(self.field, g) in self for g in other.generators)

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearCode(q={self.q}, n={self.n}, d={self.dimension})"


def code_from_generators(field: FieldSpec, n: int, rows: Iterable) -> LinearCode:
    """Build a code from (possibly dependent) rows; dependent rows are dropped."""
    if n <= 0:
        raise EmptyBlock("block length must be positive")
    words = [as_word(field, r) for r in rows]
    for w in words:
        if len(w) != n:
            raise ValueError(f"row of length {len(w)} in a code of length {n}")
    if not words:
        return LinearCode(field, n, np.zeros((0, n), dtype=np.int64))
    matrix = np.array([w.symbols for w in words], dtype=np.int64)
    keep = independent_rows(matrix, field.q)
    dropped = tuple(i for i in range(len(words)) if i not in keep)
    if dropped:
        log_.info("dropped dependent generator rows %s", dropped)
    return LinearCode(field, n, matrix[keep], dropped)


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return code_from_generators(field, n, [])


def repetition_code(field: FieldSpec, n: int) -> LinearCode:
    return code_from_generators(field, n, [(1,) * n])


def random_code(field: FieldSpec, n: int, d: int, rng: np.random.Generator) -> LinearCode:
    """Uniformly random ``d``-dimensional code: rows are resampled until independent."""
    if not 0 <= d <= n:
        raise ValueError(f"dimension {d} not in [0, {n}]")
    rows: list[np.ndarray] = []
    while len(rows) < d:
        row = rng.integers(0, field.q, size=n)
        if rank(np.array(rows + [row]), field.q) == len(rows) + 1:
            rows.append(row)
    return code_from_generators(field, n, rows)


@dataclass(frozen=True)
class WeightDistribution:
    """Exact counts ``B_0..B_n`` of a set of words by Hamming weight."""

    counts: tuple[int, ...]
    set_size: int = -1

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("weight counts must be non-negative")
        object.__setattr__(self, "counts", counts)
        if self.set_size == -1:
            object.__setattr__(self, "set_size", sum(counts))
        elif sum(counts) != self.set_size:
            raise ValueError(f"counts sum to {sum(counts)}, not {self.set_size}")

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __add__(self, other: WeightDistribution) -> WeightDistribution:
        if len(other) != len(self):
            raise ValueError("length mismatch")
        return WeightDistribution(tuple(a + b for a, b in zip(self, other)))


def _distribution(weights: np.ndarray, n: int) -> WeightDistribution:
    return WeightDistribution(tuple(int(c) for c in np.bincount(weights, minlength=n + 1)))


def weight_distribution(code: LinearCode) -> WeightDistribution:
    return _distribution(code.weights, code.n)


def coset_weight_distribution(code: LinearCode, v) -> WeightDistribution:
    """Weight distribution of the coset ``C + v``."""
    v = as_word(code.field, v)
    if len(v) != code.n:
        raise ValueError(f"word of length {len(v)} for a code of length {code.n}")
    shifted = (code.codewords + v.as_array()) % code.q
    return _distribution(np.count_nonzero(shifted, axis=1), code.n)


@dataclass(frozen=True)
class CodeProfile:
    n: int
    q: int
    size: int
    dimension: int
    min_distance_fraction: Fraction
    bias: Fraction
    sparsity_exponent: float

    @property
    def min_weight(self) -> int:
        return int(self.min_distance_fraction * self.n)


@dataclass(frozen=True)
class AllZeroProfile:
    """Profile of the zero code, for which distance and bias are undefined."""

    n: int
    q: int
    size: int = 1
    dimension: int = 0
    min_distance_fraction: None = None
    bias: None = None
    sparsity_exponent: float = 0.0


def profile(code: LinearCode) -> CodeProfile | AllZeroProfile:
    if code.dimension == 0:
        return AllZeroProfile(code.n, code.q)
    n, q = code.n, code.q
    nonzero = code.weights[1:]
    mean = Fraction(q - 1, q)
    bias = max(abs(Fraction(int(w), n) - mean) for w in np.unique(nonzero))
    t_hat = log(code.size) / log(n) if n >= 2 else float("inf")
    return CodeProfile(n, q, code.size, code.dimension,
                       Fraction(int(nonzero.min()), n), bias, t_hat)


def distance_to_code(code: LinearCode, v) -> tuple[Fraction, Word]:
    """Fractional distance from ``v`` to the code, and a nearest codeword."""
    v = as_word(code.field, v)
    dists = np.count_nonzero(code.codewords != v.as_array(), axis=1)
    best = int(np.argmin(dists))
    return Fraction(int(dists[best]), code.n), Word.from_array(code.field, code.codewords[best])


def puncture(code: LinearCode, drop: Iterable[int]) -> LinearCode:
    """Delete the coordinates in ``drop`` from every codeword."""
    drop = sorted(set(drop))
    for i in drop:
        if not 0 <= i < code.n:
            raise IndexError(f"coordinate {i} out of range for length {code.n}")
    n_new = code.n - len(drop)
    if n_new < 1:
        raise EmptyBlock(f"puncturing {len(drop)} of {code.n} coordinates leaves nothing")
    keep = [j for j in range(code.n) if j not in drop]
    return code_from_generators(code.field, n_new, code.generators[:, keep])


def span_with(code: LinearCode, v) -> LinearCode:
    """Linear span of ``C`` and ``v``; the code itself when ``v`` is already in it."""
    v = as_word(code.field, v)
    if len(v) != code.n:
        raise ValueError(f"word of length {len(v)} for a code of length {code.n}")
    if v in code:
        return code
    return code_from_generators(code.field, code.n, [*code.generators, v.symbols])


def candidate_count(n: int, k: int, q: int, required: int = 0) -> int:
    """Number of weight-``k`` words whose support contains ``required`` fixed coordinates."""
    if k < required or k > n:
        return 0
    return comb(n - required, k - required) * (q - 1) ** k


@dataclass(frozen=True)
class DualSlice:
    """Every dual codeword of weight ``k`` that is nonzero on ``required_nonzero``.

    ``vectors`` is ordered lexicographically by support, then by the values on
    the support, so drawing a uniform index is reproducible.
    """

    field: FieldSpec
    k: int
    required_nonzero: frozenset[int]
    vectors: np.ndarray = dc_field(repr=False)

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, idx: int) -> Word:
        return Word.from_array(self.field, self.vectors[idx])

    @property
    def members(self) -> list[Word]:
        return [Word.from_array(self.field, y) for y in self.vectors]


def _supports(n: int, k: int, required: Sequence[int]):
    """k-subsets of range(n) containing ``required``, in lexicographic order."""
    req = sorted(required)
    rest = [j for j in range(n) if j not in req]
    for extra in itertools.combinations(rest, k - len(req)):
        yield tuple(sorted(extra + tuple(req)))


def dual_slice(code: LinearCode, k: int, required_nonzero: Iterable[int] = ()) -> DualSlice:
    """Enumerate ``[C^perp]_k`` (optionally restricted to words nonzero on given indices).

    Every candidate (a k-subset support and a nonzero assignment on it) is
    checked against every generator; there is no pruning, so the result is a
    brute-force oracle independent of any weight-enumerator identity.
    """
    n, q = code.n, code.q
    required = frozenset(int(i) for i in required_nonzero)
    for i in required:
        if not 0 <= i < n:
            raise IndexError(f"coordinate {i} out of range for length {n}")
    if not 0 <= k <= n:
        raise ValueError(f"weight {k} not in [0, {n}]")
    empty = np.zeros((0, n), dtype=np.int64)
    if len(required) > k:
        return DualSlice(code.field, k, required, empty)
    total = candidate_count(n, k, q, len(required))
    if total > guard_limit():
        raise ScanTooLarge(
            f"[C^perp]_{k} scan over {total} candidates exceeds the guard {guard_limit()}")
    if k == 0:
        return DualSlice(code.field, 0, required, np.zeros((1, n), dtype=np.int64))

    values = np.array(list(itertools.product(range(1, q), repeat=k)), dtype=np.int64)
    gen_t = code.generators.T  # n x d
    d = max(code.dimension, 1)
    batch = max(1, 2_000_000 // (len(values) * d))
    found = []
    supports = _supports(n, k, sorted(required))
    while True:
        chunk = list(itertools.islice(supports, batch))
        if not chunk:
            break
        sup = np.array(chunk, dtype=np.int64)              # B x k
        cols = gen_t[sup]                                   # B x k x d
        synd = np.einsum("vk,bkd->bvd", values, cols) % q   # B x V x d
        b_idx, v_idx = np.nonzero(~synd.any(axis=2))
        rows = np.zeros((len(b_idx), n), dtype=np.int64)
        rows[np.arange(len(b_idx))[:, None], sup[b_idx]] = values[v_idx]
        found.append(rows)
    vectors = np.vstack(found) if found else empty
    vectors.setflags(write=False)
    return DualSlice(code.field, k, required, vectors)
