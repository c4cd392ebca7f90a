"""Exact q-ary Krawtchouk polynomials and the MacWilliams transform.

All values are Python integers or :class:`fractions.Fraction`; the square
roots in the root-interval endpoints are never rounded silently.  They are
either compared exactly (by squaring) or enclosed in rational intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, floor, isqrt

from .code import WeightDistribution
from .errors import DomainError, MacWilliamsViolation
from .report import ReportRow, VerificationReport


def _check_args(k: int, i: int, n: int) -> None:
    if n < 0 or not 0 <= k <= n or not 0 <= i <= n:
        raise DomainError(f"need 0 <= k, i <= n, got k={k}, i={i}, n={n}")


@lru_cache(maxsize=65536)
def krawtchouk_eval(k: int, i: int, q: int, n: int) -> int:
    """``P_k(i, q, n) = sum_l C(i,l) C(n-i,k-l) (-1)^l (q-1)^(k-l)``."""
    _check_args(k, i, n)
    if q < 2:
        raise DomainError(f"q must be at least 2, got {q}")
    return sum(comb(i, l) * comb(n - i, k - l) * (-1) ** l * (q - 1) ** (k - l)
               for l in range(k + 1))


def krawtchouk_eval_rational(k: int, i: int, s, n: int) -> Fraction:
    """The defining sum with a rational ``s > 1`` in place of ``q``."""
    _check_args(k, i, n)
    s = Fraction(s)
    if s <= 1:
        raise DomainError(f"s must exceed 1, got {s}")
    return sum((comb(i, l) * comb(n - i, k - l) * (-1) ** l * (s - 1) ** (k - l)
                for l in range(k + 1)), Fraction(0))


def sqrt_enclosure(x: int, scale: int = 10**10) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 1/scale``."""
    r = isqrt(x * scale * scale)
    lo = Fraction(r, scale)
    hi = lo if r * r == x * scale * scale else Fraction(r + 1, scale)
    return lo, hi


def _sign_of(u: Fraction, c: Fraction, x: int) -> int:
    """Sign of ``u + c*sqrt(x)`` for ``c >= 0``."""
    if u >= 0:
        return 0 if u == 0 and (c == 0 or x == 0) else 1
    diff = c * c * x - u * u
    return (diff > 0) - (diff < 0)


@dataclass(frozen=True)
class RootInterval:
    """``[mu1, mu2] = center -/+ coef*sqrt(radicand)`` with rational enclosures."""

    k: int
    q: int
    n: int
    center: Fraction
    coef: Fraction
    radicand: int
    mu1_lo: Fraction
    mu1_hi: Fraction
    mu2_lo: Fraction
    mu2_hi: Fraction

    def at_least_mu1(self, x) -> bool:
        return _sign_of(Fraction(x) - self.center, self.coef, self.radicand) >= 0

    def at_most_mu2(self, x) -> bool:
        return _sign_of(self.center - Fraction(x), self.coef, self.radicand) >= 0

    def at_most_mu1(self, x) -> bool:
        return _sign_of(Fraction(x) - self.center, self.coef, self.radicand) <= 0

    def at_least_mu2(self, x) -> bool:
        return _sign_of(self.center - Fraction(x), self.coef, self.radicand) <= 0

    def contains(self, x) -> bool:
        return self.at_least_mu1(x) and self.at_most_mu2(x)

    def floor_mu1(self) -> int:
        m = floor(self.mu1_lo)
        while self.at_most_mu1(m + 1):
            m += 1
        return m

    def ceil_mu2(self) -> int:
        m = -floor(-self.mu2_hi)
        while self.at_least_mu2(m - 1):
            m -= 1
        return m

    @property
    def mu1(self) -> float:
        return float((self.mu1_lo + self.mu1_hi) / 2)

    @property
    def mu2(self) -> float:
        return float((self.mu2_lo + self.mu2_hi) / 2)


def root_interval(k: int, q: int, n: int, scale: int = 10**10) -> RootInterval:
    """Endpoints ``(1-1/q)n - k(1-2/q) -/+ (2/q)sqrt((q-1)k(n-k))``."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    center = Fraction(q - 1, q) * n - k * Fraction(q - 2, q)
    coef = Fraction(2, q)
    radicand = (q - 1) * k * (n - k)
    lo, hi = sqrt_enclosure(radicand, scale)
    return RootInterval(k, q, n, center, coef, radicand,
                        center - coef * hi, center - coef * lo,
                        center + coef * lo, center + coef * hi)


@dataclass(frozen=True)
class KrawtchoukTable:
    q: int
    n: int
    k_max: int
    values: tuple[tuple[int, ...], ...]

    def __call__(self, k: int, i: int) -> int:
        return self.values[k][i]

    def row(self, k: int) -> tuple[int, ...]:
        return self.values[k]


def krawtchouk_table(q: int, n: int, k_max: int | None = None) -> KrawtchoukTable:
    k_max = n if k_max is None else k_max
    if not 0 <= k_max <= n:
        raise DomainError(f"k_max={k_max} outside [0, {n}]")
    values = tuple(tuple(krawtchouk_eval(k, i, q, n) for i in range(n + 1))
                   for k in range(k_max + 1))
    return KrawtchoukTable(q, n, k_max, values)


def macwilliams_transform(weights: WeightDistribution | tuple[int, ...], code_size: int,
                          q: int, n: int) -> WeightDistribution:
    """Dual weight distribution ``B_k = (1/|C|) sum_i B_i P_k(i)``.

    Raises:
        MacWilliamsViolation: some ``B_k`` is negative or not an integer, so
            the input was not the distribution of a linear code over F_q.
    """
    counts = tuple(weights)
    if len(counts) != n + 1:
        raise DomainError(f"expected {n + 1} weight counts, got {len(counts)}")
    if code_size != sum(counts) or code_size <= 0:
        raise DomainError(f"code size {code_size} does not match the counts")
    dual = []
    for k in range(n + 1):
        total = sum(b * krawtchouk_eval(k, i, q, n) for i, b in enumerate(counts) if b)
        value, rem = divmod(total, code_size)
        if rem or value < 0:
            raise MacWilliamsViolation(
                f"B_{k} = {Fraction(total, code_size)} is not a non-negative integer")
        dual.append(value)
    return WeightDistribution(tuple(dual))


def orthogonality_sum(q: int, n: int, k: int, l: int) -> int:
    """``sum_i C(n,i) (q-1)^i P_k(i) P_l(i)``."""
    return sum(comb(n, i) * (q - 1) ** i * krawtchouk_eval(k, i, q, n)
               * krawtchouk_eval(l, i, q, n) for i in range(n + 1))


def sign_changes(values) -> list[tuple[int, int]]:
    """Pairs ``(i, i')`` of consecutive nonzero entries with opposite signs."""
    out = []
    prev = None
    for i, v in enumerate(values):
        if v == 0:
            continue
        if prev is not None and (values[prev] > 0) != (v > 0):
            out.append((prev, i))
        prev = i
    return out


def _bound_4b(k: int, q: int, n: int, scale: int) -> tuple[Fraction, Fraction]:
    """Enclosure of ``(q^k/k!) [k + (2/q)(sqrt((q-1)k(n-k)) - k)]^k``."""
    lo, hi = sqrt_enclosure((q - 1) * k * (n - k), scale)
    base = lambda s: k + Fraction(2, q) * (s - k)
    lead = Fraction(q**k, factorial(k))
    return lead * base(lo) ** k, lead * base(hi) ** k


def verify_krawtchouk_properties(q: int, n: int, k_max: int) -> VerificationReport:
    """Exact checks of the standard Krawtchouk facts used by the bounds.

    Identities (value at 0, the ``q -> q/(q-1)`` reflection, orthogonality)
    are hard rows.  The root-location statements and the pointwise bounds
    derived from them hold for large ``n`` only and fail for ``k`` close to
    ``n``; they are reported as informational rows.
    """
    if not 0 <= k_max <= n:
        raise DomainError(f"k_max={k_max} outside [0, {n}]")
    rep = VerificationReport()
    table = krawtchouk_table(q, n, k_max)
    s = Fraction(q, q - 1)
    mean = Fraction(q - 1, q) * n

    for k in range(k_max + 1):
        rep.add(ReportRow.compare(f"P1[k={k}]", table(k, 0), comb(n, k) * (q - 1) ** k, "=="))
        for i in range(n + 1):
            rhs = krawtchouk_eval_rational(k, n - i, s, n) * (1 - q) ** k
            rep.add(ReportRow.compare(f"P2[k={k},i={i}]", table(k, i), rhs, "=="))

    for k in range(k_max + 1):
        for l in range(k + 1, k_max + 1):
            rep.add(ReportRow.compare(f"orthogonality[k={k},l={l}]",
                                      orthogonality_sum(q, n, k, l), 0, "=="))
        rep.add(ReportRow.compare(f"orthogonality_diag[k={k}]", orthogonality_sum(q, n, k, k),
                                  q**n * comb(n, k) * (q - 1) ** k, "==", hard=False,
                                  note="normalization q^n C(n,k) (q-1)^k"))

    for k in range(1, k_max + 1):
        iv = root_interval(k, q, n)
        row = table.row(k)
        lo_i, hi_i = iv.floor_mu1(), iv.ceil_mu2()
        outside = [(a, b) for a, b in sign_changes(row) if a < lo_i or b > hi_i]
        outside += [(i, i) for i, v in enumerate(row) if v == 0 and not lo_i <= i <= hi_i]
        rep.add(ReportRow.compare(
            f"P3.roots_in_interval[k={k}]", len(outside), 0, "==", hard=False,
            note=f"[floor mu1, ceil mu2] = [{lo_i}, {hi_i}]"
                 + (f"; sign changes/zeros outside at {outside}" if outside else "")))
        nonpos = [i for i in range(n + 1) if not iv.at_least_mu1(i) and row[i] <= 0]
        rep.add(ReportRow.compare(
            f"P3.positive_below_mu1[k={k}]", len(nonpos), 0, "==", hard=False,
            note=f"non-positive at {nonpos}" if nonpos else ""))

        lead = Fraction(q**k, factorial(k))
        for i in range(n + 1):
            rhs = lead * (mean - i) ** k
            if i <= mean:
                rep.add(ReportRow.compare(f"P4a[k={k},i={i}]", row[i], rhs, "<=", hard=False))
            else:
                rep.add(ReportRow.gated(f"P4a[k={k},i={i}]", "i beyond (1-1/q)n; not evaluated",
                                        row[i], rhs))

        for i in range(n + 1):
            if not iv.contains(i):
                continue
            scale = 10**12
            while True:
                b_lo, b_hi = _bound_4b(k, q, n, scale)
                if abs(row[i]) <= b_lo:
                    rep.add(ReportRow.compare(f"P4b[k={k},i={i}]", abs(row[i]), b_lo, "<=",
                                              hard=False, note="rhs: lower enclosure"))
                    break
                if abs(row[i]) > b_hi:
                    rep.add(ReportRow.compare(f"P4b[k={k},i={i}]", abs(row[i]), b_hi, "<=",
                                              hard=False, note="rhs: upper enclosure"))
                    break
                scale *= 10**6

        if k % 2 == 1:
            for i in range(n + 1):
                if iv.at_most_mu2(i):
                    continue
                rep.add(ReportRow.compare(f"P4c[k={k},i={i}]", row[i], 0, "<=", hard=False))
    return rep
