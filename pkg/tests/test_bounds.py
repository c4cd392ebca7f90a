from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import seeded_code
from sparsecode import (BoundsParams, claim5_sum, johnson_count_bound, krawtchouk_eval,
                        lemma6_deviation, lemma8_check, lemma9_sum_check, lemma10_check,
                        select_test_weight, verify_prop4, weight_distribution)
from sparsecode.bounds import (approx_pow, ceil_minus_pow, claim5_sums, floor_minus_pow,
                               floor_plus_pow, lemma6_report, lemma9_range, pow_sign)
from sparsecode.errors import DomainError, PreconditionError


def test_params_defaults_and_validation():
    p = BoundsParams()
    assert p.gamma_prime == Fraction(1, 4)
    assert isinstance(BoundsParams(t="3/2").t, Fraction)
    for bad in (dict(t=0), dict(gamma=-1), dict(delta=Fraction(3, 4)), dict(tau=Fraction(1, 2)),
                dict(gamma=Fraction(1, 2), gamma_prime=Fraction(1, 2))):
        with pytest.raises(ValueError):
            BoundsParams(**bad)


def test_select_test_weight():
    assert select_test_weight(BoundsParams(t=1, c=1, gamma=1), 2) == 97
    assert select_test_weight(BoundsParams(t=1, c=1, gamma=1), 3) == 193
    assert select_test_weight(BoundsParams(t=40, c=40, gamma=Fraction(1, 10)), 2) == 811
    assert select_test_weight(BoundsParams(), 5) % 2 == 1


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 500), num=st.integers(-6, 6), den=st.integers(1, 6),
       r=st.fractions(min_value=0, max_value=1000))
def test_pow_sign_against_floats(n, num, den, r):
    e = Fraction(num, den)
    x = n ** float(e)
    s = pow_sign(n, e, r)
    if abs(x - float(r)) > 1e-9 * max(1.0, x):
        assert s == (1 if x > r else -1)


def test_pow_sign_exact_ties():
    assert pow_sign(16, Fraction(1, 2), 4) == 0
    assert pow_sign(27, Fraction(2, 3), 9) == 0
    assert pow_sign(4, Fraction(-1, 2), Fraction(1, 2)) == 0


@settings(max_examples=200, deadline=None)
@given(n=st.integers(2, 400), num=st.integers(1, 5), den=st.integers(1, 6),
       base=st.fractions(min_value=-50, max_value=300, max_denominator=7))
def test_inward_rounding(n, num, den, base):
    e = Fraction(num, den)
    x = approx_pow(n, e)
    assert floor_minus_pow(base, n, e) == math.floor(base - x)
    assert ceil_minus_pow(base, n, e) == math.ceil(base - x)
    assert floor_plus_pow(base, n, e) == math.floor(base + x)


def test_rounding_at_exact_integers():
    assert floor_minus_pow(Fraction(10), 16, Fraction(1, 2)) == 6
    assert ceil_minus_pow(Fraction(10), 16, Fraction(1, 2)) == 6
    assert floor_plus_pow(Fraction(10), 16, Fraction(1, 2)) == 14


def test_lemma6_repetition(rep3):
    assert lemma6_deviation(rep3, 2) == Fraction(1, 2)
    assert lemma6_deviation(rep3, 3) == Fraction(-1, 4)
    with pytest.raises(DomainError):
        lemma6_deviation(rep3, 0)
    rep = lemma6_report(rep3, 3)
    assert {r.check for r in rep} == {"lemma6.deviation[k=3]", "lemma6.odd_upper[k=3]"}


def test_claim5_repetition(rep3):
    s = claim5_sums(weight_distribution(rep3), 3, Fraction(1), 3, 3)
    assert (s.lo, s.hi, s.tail, s.p0) == (1, 3, -2, 8)
    rep = claim5_sum(weight_distribution(rep3), 3, BoundsParams(gamma=1), 3, 3)
    tail = rep.named("claim5.tail")[0]
    assert tail.lhs == Fraction(-1, 4) and tail.passed and not tail.hard
    with pytest.raises(PreconditionError):
        claim5_sum(weight_distribution(rep3), 2, BoundsParams(gamma=1), 3, 3)


def test_claim5_even_k_is_gated(rep3):
    rep = claim5_sum(weight_distribution(rep3), 2, BoundsParams(gamma=2), 3, 3)
    assert rep.named("claim5.tail")[0].passed is None


def test_lemma8_rows():
    rep = lemma8_check(3, Fraction(1, 4), 3, 10)
    assert [r.check for r in rep] == ["lemma8[k=3,i=2]", "lemma8[k=3,i=3]"]
    assert rep.rows[0].rhs == Fraction(27, 64) * krawtchouk_eval(3, 0, 3, 10)
    assert lemma8_check(2, 0, 3, 10).rows[0].passed
    with pytest.raises(PreconditionError):
        lemma8_check(2, Fraction(1, 2), 3, 10)


def test_johnson_bound():
    assert johnson_count_bound(0, 2, 10) == 2
    assert johnson_count_bound(2, 3, 9) == Fraction(3 * 81, 36)
    with pytest.raises(DomainError):
        johnson_count_bound(6, 3, 9)


def test_lemma9_premise_is_exact():
    for seed in range(4):
        code = seeded_code(3, 15, 2, seed)
        params = BoundsParams(gamma=Fraction(1, 2), delta=Fraction(1, 5))
        rep = lemma9_sum_check(code, 3, params)
        a, b = lemma9_range(3, 15, params)
        assert a <= b + 1
        if rep.named("lemma9.johnson_premise"):
            assert rep.ok


def test_lemma9_gated_without_distance(f3):
    from sparsecode import code_from_generators
    code = code_from_generators(f3, 12, [[1] + [0] * 11])
    rep = lemma9_sum_check(code, 3, BoundsParams())
    assert len(rep) == 1 and rep.rows[0].passed is None


def test_lemma10(rep3):
    rep = lemma10_check(rep3, (1, 0, 0), 3)
    norm = rep.named("lemma10.normalized")[0]
    # C||v has dual {(0, a, -a)}: no weight-3 members
    assert norm.lhs == 0 and norm.rhs == Fraction(5, 6)
    assert lemma10_check(rep3, (1, 0, 0), 2).named("lemma10.normalized")[0].passed is None
    with pytest.raises(PreconditionError):
        lemma10_check(rep3, (2, 2, 2), 3)


def test_prop4_on_simplex(simplex3):
    rep = verify_prop4(simplex3, BoundsParams(t=2, gamma=Fraction(1, 2)))
    assert rep.ok
    assert all(r.passed for r in rep)


def test_prop4_hypotheses_gate(rep3):
    rep = verify_prop4(rep3, BoundsParams(gamma=2))
    assert rep.named("prop4.B0")[0].passed
    assert rep.ok


@pytest.mark.parametrize("seed", range(6))
def test_prop4_never_fails_hard_on_random_codes(seed):
    code = seeded_code([2, 3, 5][seed % 3], 12, 2, seed)
    assert verify_prop4(code, BoundsParams(t=1, gamma=Fraction(1, 3))).ok
