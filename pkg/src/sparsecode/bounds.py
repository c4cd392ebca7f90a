"""Finite-n checks of the weight-distribution bounds behind the tester.

Statements that are exact at every n (the Johnson ball-count premise, the
zero-word count) produce hard rows.  Statements that only hold for
sufficiently large n produce informational rows carrying the exact left and
right sides, so trends across n can be read off the reports.

Range endpoints such as ``(1-1/q)n - n^(1-gamma)`` are irrational in general.
They are compared against integers exactly (by raising both sides to the
denominator of the exponent) and rounded inward: ceiling on lower limits,
floor on upper limits.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import NamedTuple

from .code import (LinearCode, as_word, coset_weight_distribution,
                   distance_to_code, span_with, weight_distribution)
from .errors import DomainError, PreconditionError
from .krawtchouk import krawtchouk_eval, macwilliams_transform
from .report import ReportRow, VerificationReport


@dataclass(frozen=True)
class BoundsParams:
    """Exponents and distances used by the bounds.

    ``gamma_prime`` defaults to ``gamma / 2``.
    """

    t: Fraction = Fraction(1)
    gamma: Fraction = Fraction(1, 2)
    c: Fraction = Fraction(1)
    delta: Fraction = Fraction(1, 4)
    tau: Fraction = Fraction(0)
    gamma_prime: Fraction | None = None

    def __post_init__(self) -> None:
        for name in ("t", "gamma", "c", "delta", "tau"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        gp = self.gamma / 2 if self.gamma_prime is None else Fraction(self.gamma_prime)
        object.__setattr__(self, "gamma_prime", gp)
        if self.t <= 0 or self.gamma <= 0 or self.c <= 0:
            raise ValueError("t, gamma and c must be positive")
        if not 0 < gp <= self.gamma / 2:
            raise ValueError(f"gamma_prime={gp} must lie in (0, gamma/2]")
        if not 0 <= self.delta <= Fraction(1, 2):
            raise ValueError(f"delta={self.delta} must lie in [0, 1/2]")
        if not 0 <= self.tau < Fraction(1, 2):
            raise ValueError(f"tau={self.tau} must lie in [0, 1/2)")


# -- exact handling of n^e for rational e ------------------------------------

def pow_sign(n: int, e: Fraction, r) -> int:
    """Sign of ``n**e - r`` for a positive integer ``n`` and rational ``e``."""
    r = Fraction(r)
    if r <= 0:
        return 1
    e = Fraction(e)
    lhs = Fraction(n) ** e.numerator
    rhs = r ** e.denominator
    return (lhs > rhs) - (lhs < rhs)


def approx_pow(n: int, e: Fraction, digits: int = 40) -> Fraction:
    """``n**e`` as a Fraction; exact for integer ``e``, else ``digits`` significant digits."""
    e = Fraction(e)
    if e.denominator == 1:
        return Fraction(n) ** e.numerator
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        value = decimal.Decimal(n) ** (decimal.Decimal(e.numerator) / decimal.Decimal(e.denominator))
    return Fraction(value)


def floor_minus_pow(base: Fraction, n: int, e: Fraction) -> int:
    """``floor(base - n^e)``."""
    m = floor(base - approx_pow(n, e))
    while pow_sign(n, e, base - m) > 0:      # m > base - n^e
        m -= 1
    while pow_sign(n, e, base - m - 1) <= 0:  # m + 1 <= base - n^e
        m += 1
    return m


def ceil_minus_pow(base: Fraction, n: int, e: Fraction) -> int:
    """``ceil(base - n^e)``."""
    m = floor_minus_pow(base, n, e)
    return m if pow_sign(n, e, base - m) == 0 else m + 1


def floor_plus_pow(base: Fraction, n: int, e: Fraction) -> int:
    """``floor(base + n^e)``."""
    m = floor(base + approx_pow(n, e))
    while pow_sign(n, e, m - base) < 0:      # m > base + n^e
        m -= 1
    while pow_sign(n, e, m + 1 - base) >= 0:  # m + 1 <= base + n^e
        m += 1
    return m


def _mean_weight(q: int, n: int) -> Fraction:
    return Fraction(q - 1, q) * n


def distance_hypothesis(code: LinearCode, gamma: Fraction) -> bool:
    """``delta(C) >= 1 - 1/q - n^-gamma``; vacuous for the zero code."""
    if code.dimension == 0:
        return True
    w_min = int(code.weights[1:].min())
    return pow_sign(code.n, 1 - gamma, _mean_weight(code.q, code.n) - w_min) >= 0


def bias_hypothesis(code: LinearCode, gamma: Fraction) -> bool:
    """Every nonzero weight lies within ``n^(1-gamma)`` of ``(1-1/q)n``."""
    if code.dimension == 0:
        return True
    mean = _mean_weight(code.q, code.n)
    dev = max(abs(int(w) - mean) for w in set(code.weights[1:].tolist()))
    return pow_sign(code.n, 1 - gamma, dev) >= 0


# -- Proposition 4 -------------------------------------------------------------

def verify_prop4(code: LinearCode, params: BoundsParams) -> VerificationReport:
    """Structural facts about the weight distribution of a sparse, nearly unbiased code."""
    n, q = code.n, code.q
    g = params.gamma
    B = weight_distribution(code)
    mean = _mean_weight(q, n)
    rep = VerificationReport()
    rep.add(ReportRow.compare("prop4.B0", B[0], 1, "=="))

    sparse = pow_sign(n, params.t, code.size) >= 0
    rep.add(ReportRow("prop4.sparsity", Fraction(code.size), approx_pow(n, params.t), "<=",
                      sparse, False, "hypothesis |C| <= n^t"))

    if distance_hypothesis(code, g):
        low = [i for i in range(1, n + 1) if pow_sign(n, 1 - g, mean - i) < 0]
        rep.add(ReportRow.compare("prop4.low_weights_empty", sum(B[i] for i in low), 0, "==",
                                  note=f"weights 1..{max(low, default=0)}"))
    else:
        rep.add(ReportRow.gated("prop4.low_weights_empty",
                                "hypothesis not met: delta(C) < 1 - 1/q - n^-gamma"))

    if bias_hypothesis(code, g):
        hi = floor_plus_pow(mean, n, 1 - g)
        rep.add(ReportRow.compare("prop4.high_weights_empty",
                                  sum(B[i] for i in range(max(hi + 1, 0), n + 1)), 0, "==",
                                  note=f"weights above {hi}"))
    else:
        rep.add(ReportRow.gated("prop4.high_weights_empty",
                                "hypothesis not met: code is not n^-gamma biased"))
    return rep


# -- Claim 5 --------------------------------------------------------------------

class Claim5Sums(NamedTuple):
    lo: int
    hi: int
    window: int
    tail: int
    p0: int


def claim5_sums(weights, k: int, gamma: Fraction, q: int, n: int) -> Claim5Sums:
    """Raw sums of ``B_i P_k(i)`` over the central window and over the upper tail."""
    B = tuple(weights)
    mean = _mean_weight(q, n)
    lo = max(ceil_minus_pow(mean, n, 1 - gamma), 0)
    hi = min(floor_plus_pow(mean, n, 1 - gamma), n)
    window = sum(B[i] * krawtchouk_eval(k, i, q, n) for i in range(lo, hi + 1))
    tail = sum(B[i] * krawtchouk_eval(k, i, q, n) for i in range(lo, n + 1))
    return Claim5Sums(lo, hi, window, tail, krawtchouk_eval(k, 0, q, n))


def claim5_sum(weights, k: int, params: BoundsParams, q: int, n: int) -> VerificationReport:
    if k < (params.t + params.c + 1) / params.gamma:
        raise PreconditionError(
            f"k={k} is below (t+c+1)/gamma = {(params.t + params.c + 1) / params.gamma}")
    s = claim5_sums(weights, k, params.gamma, q, n)
    bound = approx_pow(n, -params.c)
    rep = VerificationReport()
    rep.add(ReportRow.compare(f"claim5.window[k={k}]", Fraction(abs(s.window), s.p0), bound,
                              hard=False,
                              note=f"|sum_{{i={s.lo}..{s.hi}}} B_i P_k(i)| = {abs(s.window)}; "
                                   f"rhs n^-c"))
    if k % 2:
        rep.add(ReportRow.compare(f"claim5.tail[k={k}]", Fraction(s.tail, s.p0), bound,
                                  hard=False,
                                  note=f"sum_{{i={s.lo}..{n}}} B_i P_k(i) = {s.tail}; rhs n^-c"))
    else:
        rep.add(ReportRow.gated(f"claim5.tail[k={k}]", "tail claim needs odd k",
                                Fraction(s.tail, s.p0), bound))
    return rep


# -- Lemma 6 ----------------------------------------------------------------------

def lemma6_deviation(code: LinearCode, k: int) -> Fraction:
    """``B_k(C^perp) * |C| / P_k(0) - 1``, exactly."""
    if not 1 <= k <= code.n:
        raise DomainError(f"k={k} outside [1, {code.n}]")
    dual = macwilliams_transform(weight_distribution(code), code.size, code.q, code.n)
    return Fraction(dual[k] * code.size, krawtchouk_eval(k, 0, code.q, code.n)) - 1


def lemma6_report(code: LinearCode, k: int, slack=Fraction(1, 10)) -> VerificationReport:
    dev = lemma6_deviation(code, k)
    slack = Fraction(slack)
    rep = VerificationReport()
    rep.add(ReportRow.compare(f"lemma6.deviation[k={k}]", abs(dev), slack, hard=False,
                              note=f"signed deviation {dev}"))
    if k % 2:
        rep.add(ReportRow.compare(f"lemma6.odd_upper[k={k}]", 1 + dev, 1 + slack, hard=False,
                                  note="B_k |C| / P_k(0) vs 1 + slack"))
    return rep


# -- Lemma 8 ------------------------------------------------------------------------

def lemma8_check(k: int, tau, q: int, n: int) -> VerificationReport:
    """``P_k(tau n) <= (1 - tau)^k P_k(0)``, at floor and ceiling of ``tau n`` if needed."""
    tau = Fraction(tau)
    if not 0 <= tau < Fraction(1, 2):
        raise PreconditionError(f"tau={tau} must lie in [0, 1/2)")
    points = sorted({floor(tau * n), ceil(tau * n)})
    rhs = (1 - tau) ** k * krawtchouk_eval(k, 0, q, n)
    rep = VerificationReport()
    for i in points:
        rep.add(ReportRow.compare(f"lemma8[k={k},i={i}]", krawtchouk_eval(k, i, q, n), rhs,
                                  hard=False, note=f"tau={tau}"))
    return rep


# -- Lemma 9 --------------------------------------------------------------------------

def johnson_count_bound(i: int, q: int, n: int) -> Fraction:
    """``m_i = q n^2 / (n - q i/(q-1))^2``."""
    gap = n - Fraction(q * i, q - 1)
    if gap <= 0:
        raise DomainError(f"radius {i} is not below n(q-1)/q = {Fraction(n * (q - 1), q)}")
    return Fraction(q * n * n) / (gap * gap)


def lemma9_range(q: int, n: int, params: BoundsParams) -> tuple[int, int]:
    """Integer summation range ``[a, b]`` (empty when ``a > b``)."""
    mean = _mean_weight(q, n)
    e = 1 - params.gamma_prime
    dn = params.delta * n
    a = max(ceil_minus_pow(mean - dn, n, e), ceil(dn), 0)
    b = floor_minus_pow(mean, n, e)
    return a, b


def lemma9_rhs(k: int, q: int, n: int, params: BoundsParams) -> Fraction:
    r = Fraction(q, q - 1)
    first = (1 - r * params.delta) ** (k - 2)
    second = (2 * r * params.delta) ** (k - 2) + (2 * r * approx_pow(n, -params.gamma)) ** (k - 2)
    return 2 * (q * q + q) * krawtchouk_eval(k, 0, q, n) * min(first, second)


def lemma9_sum_check(code: LinearCode, k: int, params: BoundsParams,
                     shift=None) -> VerificationReport:
    """Mid-range weight sum of ``D = C + shift`` against its Johnson-bound estimate."""
    n, q = code.n, code.q
    rep = VerificationReport()
    if not distance_hypothesis(code, params.gamma):
        rep.add(ReportRow.gated(f"lemma9.sum[k={k}]",
                                "hypothesis not met: delta(C) < 1 - 1/q - n^-gamma"))
        return rep
    B = weight_distribution(code) if shift is None else coset_weight_distribution(code, shift)
    a, b = lemma9_range(q, n, params)

    running = 0
    for i in range(0, max(b, -1) + 1):
        running += B[i]
        rep.add(ReportRow.compare(f"lemma9.johnson_premise[i={i}]", running,
                                  johnson_count_bound(i, q, n), "<=",
                                  note="codewords of D of weight <= i vs m_i"))

    lhs = sum(krawtchouk_eval(k, i, q, n) * B[i] for i in range(a, b + 1))
    note = f"range [{a}, {b}]" + (" empty" if a > b else "") + "; rhs uses n^-gamma to 40 digits"
    rep.add(ReportRow.compare(f"lemma9.sum[k={k}]", lhs, lemma9_rhs(k, q, n, params), "<=",
                              hard=False, note=note))
    return rep


# -- Lemma 10 ---------------------------------------------------------------------------

def lemma10_check(code: LinearCode, v, k: int) -> VerificationReport:
    """Weight-``k`` dual count of ``C||v`` against ``1 - delta(v, C)/2``.

    The ``|C|``-normalized ratio ``B_k((C||v)^perp) |C| / P_k(0)`` is the one
    comparable to ``1 - delta/2`` (it equals ``1 - Rej_k(v)`` up to the
    deviation of ``B_k(C^perp)`` from ``P_k(0)/|C|``); the unnormalized ratio
    is reported alongside.
    """
    v = as_word(code.field, v)
    if v in code:
        raise PreconditionError("v is a codeword")
    n, q = code.n, code.q
    delta, _ = distance_to_code(code, v)
    wide = span_with(code, v)
    dual = macwilliams_transform(weight_distribution(wide), wide.size, q, n)
    p0 = krawtchouk_eval(k, 0, q, n)
    target = 1 - delta / 2
    rep = VerificationReport()
    parity = "odd" if k % 2 else "even"
    normalized = Fraction(dual[k] * code.size, p0)
    if k % 2:
        rep.add(ReportRow.compare(f"lemma10.normalized[k={k}]", normalized, target, hard=False,
                                  note=f"delta(v,C)={delta}; {parity} k"))
    else:
        rep.add(ReportRow.gated(f"lemma10.normalized[k={k}]",
                                f"even k: bound stated for odd k only; delta(v,C)={delta}",
                                normalized, target))
    rep.add(ReportRow.compare(f"lemma10.unnormalized[k={k}]", Fraction(dual[k], p0), target,
                              hard=False, note=f"B_k((C||v)^perp) / P_k(0); {parity} k"))
    return rep


# -- choice of k --------------------------------------------------------------------------

def select_test_weight(params: BoundsParams, q: int) -> int:
    """Smallest odd k with ``k >= (t+c+1)/gamma``, ``k >= 16(q^2+q)`` and ``k >= 2 + 2q/(q-1)``."""
    k = max(ceil((params.t + params.c + 1) / params.gamma), 16 * (q * q + q),
            ceil(2 + Fraction(2 * q, q - 1)))
    return k if k % 2 else k + 1
