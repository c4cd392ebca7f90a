from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import (brute_dual_distribution, krawtchouk_by_characters,
                     krawtchouk_by_generating_function)
from sparsecode import (krawtchouk_eval, krawtchouk_eval_rational, krawtchouk_table,
                        macwilliams_transform, root_interval, verify_krawtchouk_properties,
                        weight_distribution)
from sparsecode.errors import DomainError, MacWilliamsViolation
from sparsecode.krawtchouk import orthogonality_sum, sign_changes, sqrt_enclosure


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4), (5, 3), (2, 6), (3, 5)])
def test_matches_character_sum(q, n):
    for k in range(n + 1):
        for i in range(n + 1):
            assert krawtchouk_eval(k, i, q, n) == krawtchouk_by_characters(k, i, q, n)


@settings(max_examples=200, deadline=None)
@given(q=st.sampled_from([2, 3, 5, 7]), n=st.integers(0, 20), data=st.data())
def test_matches_generating_function(q, n, data):
    k = data.draw(st.integers(0, n))
    i = data.draw(st.integers(0, n))
    assert krawtchouk_eval(k, i, q, n) == krawtchouk_by_generating_function(k, i, q, n)


def test_small_values():
    assert [krawtchouk_eval(1, i, 3, 3) for i in range(4)] == [6, 3, 0, -3]
    assert [krawtchouk_eval(2, i, 3, 3) for i in range(4)] == [12, 0, -3, 3]
    assert [krawtchouk_eval(3, i, 3, 3) for i in range(4)] == [8, -4, 2, -1]


def test_domain_errors():
    with pytest.raises(DomainError):
        krawtchouk_eval(4, 0, 3, 3)
    with pytest.raises(DomainError):
        krawtchouk_eval(1, -1, 3, 3)
    with pytest.raises(DomainError):
        krawtchouk_eval_rational(1, 0, 1, 3)


@pytest.mark.parametrize("q,n", [(2, 7), (3, 6), (5, 5)])
def test_inversion(q, n):
    # sum_i P_k(i) P_i(l) = q^n [k == l]
    for k in range(n + 1):
        for l in range(n + 1):
            s = sum(krawtchouk_eval(k, i, q, n) * krawtchouk_eval(i, l, q, n) for i in range(n + 1))
            assert s == (q**n if k == l else 0)


@pytest.mark.parametrize("q,n,k,expected", [(2, 3, 1, 24), (3, 4, 2, 1944), (5, 3, 1, 1500),
                                            (2, 10, 5, 258048), (3, 6, 3, 116640)])
def test_orthogonality_diagonal_regression(q, n, k, expected):
    assert orthogonality_sum(q, n, k, k) == expected == q**n * comb(n, k) * (q - 1) ** k


@settings(max_examples=100, deadline=None)
@given(q=st.sampled_from([2, 3, 5]), n=st.integers(1, 15), data=st.data())
def test_reflection_identity(q, n, data):
    k, i = data.draw(st.integers(0, n)), data.draw(st.integers(0, n))
    s = Fraction(q, q - 1)
    assert krawtchouk_eval(k, i, q, n) == (1 - q) ** k * krawtchouk_eval_rational(k, n - i, s, n)


def test_rational_agrees_at_integers():
    for k in range(5):
        for i in range(5):
            assert krawtchouk_eval_rational(k, i, 3, 4) == krawtchouk_eval(k, i, 3, 4)


def test_table():
    t = krawtchouk_table(3, 3)
    assert t(2, 0) == 12 and t.row(1) == (6, 3, 0, -3)
    with pytest.raises(DomainError):
        krawtchouk_table(3, 3, 4)


def test_sqrt_enclosure():
    lo, hi = sqrt_enclosure(2, 10**6)
    assert lo * lo <= 2 <= hi * hi and hi - lo <= Fraction(1, 10**6)
    assert sqrt_enclosure(49) == (7, 7)


def test_root_interval_exact_comparisons():
    iv = root_interval(2, 3, 6)
    # center 6*2/3 - 2/3 = 10/3; half-width (2/3) sqrt(16) = 8/3
    assert iv.center == Fraction(10, 3) and iv.radicand == 16
    assert iv.contains(Fraction(2, 3)) and iv.contains(6) and not iv.contains(Fraction(1, 2))
    assert iv.floor_mu1() == 0 and iv.ceil_mu2() == 6
    assert abs(iv.mu1 - 2 / 3) < 1e-9


def test_sign_changes():
    assert sign_changes([3, 0, -1, 2]) == [(0, 2), (2, 3)]
    assert sign_changes([1, 1]) == []


def test_macwilliams_repetition(rep3):
    dual = macwilliams_transform(weight_distribution(rep3), 3, 3, 3)
    assert tuple(dual) == (1, 0, 6, 2) and dual.set_size == 9


def test_macwilliams_zero_code(zero5):
    dual = macwilliams_transform(weight_distribution(zero5), 1, 3, 5)
    assert tuple(dual) == tuple(comb(5, k) * 2**k for k in range(6))


def test_macwilliams_matches_full_scan(small_code):
    c = small_code
    dual = macwilliams_transform(weight_distribution(c), c.size, c.q, c.n)
    assert list(dual) == brute_dual_distribution(c)
    assert dual.set_size * c.size == c.q ** c.n


def test_macwilliams_rejects_non_codes():
    with pytest.raises(MacWilliamsViolation):
        macwilliams_transform((1, 1, 0, 0), 2, 3, 3)
    with pytest.raises(DomainError):
        macwilliams_transform((1, 0), 1, 3, 3)


def test_verify_example_q3_n5():
    rep = verify_krawtchouk_properties(3, 5, 3)
    assert rep.ok and not rep.failures


@pytest.mark.parametrize("q", [2, 3, 5])
def test_hard_identities_hold(q):
    for n in (4, 9, 14):
        rep = verify_krawtchouk_properties(q, n, min(n, 4))
        assert rep.ok
        assert all(r.passed for r in rep if r.check.split("[")[0] in ("P1", "P2", "orthogonality"))
