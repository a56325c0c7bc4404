from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.qring import ONE, ZERO, GradedShift, LaurentScalar, qbinom, qfact, qint

q = LaurentScalar({1: 1})
laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentScalar)


# ---- oracle values

def test_qint_small():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qint(2) == LaurentScalar({1: 1, -1: 1})
    assert qint(3) == LaurentScalar({2: 1, 0: 1, -2: 1})
    assert qint(-2) == -qint(2)


def test_qfact_and_qbinom_values():
    assert qfact(0) == ONE
    assert qfact(3) == qint(2) * qint(3)
    assert qbinom(4, 2) == LaurentScalar({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert qbinom(3, 1) == qint(3)
    with pytest.raises(ValueError):
        qbinom(2, 3)


def test_qint_is_a_quotient():
    # (q^n - q^-n) = (q - q^-1) [n]
    for n in range(1, 7):
        assert (q - q ** -1) * qint(n) == LaurentScalar({n: 1, -n: -1})


def test_evaluation_at_one_gives_integers():
    from math import comb, factorial
    for n in range(7):
        assert qint(n).at(1) == n
        assert qfact(n).at(1) == factorial(n)
        for k in range(n + 1):
            assert qbinom(n, k).at(1) == comb(n, k)
    assert qint(2).at(Fraction(1, 2)) == Fraction(5, 2)


def test_tate_twist_and_k0():
    t = GradedShift.tate(2)
    assert (t.internal, t.homological) == (-2, 2)
    assert t.k0() == LaurentScalar({-2: 1})
    assert GradedShift.tate(1).k0() == LaurentScalar({-1: -1})
    assert t + (-t) == GradedShift()


def test_json_round_trip():
    x = LaurentScalar({3: 2, -1: -1})
    assert LaurentScalar.from_json(x.to_json()) == x
    assert repr(ZERO) == "0"


def test_exact_div():
    assert (qint(2) * qint(3)).exact_div(qint(2)) == qint(3)
    with pytest.raises(ValueError):
        qint(3).exact_div(LaurentScalar({0: 2}))


# ---- properties

@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(laurent, laurent)
def test_bar_is_a_ring_involution(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert a.bar().bar() == a


@given(st.integers(0, 9), st.data())
def test_qbinom_symmetries(n, data):
    k = data.draw(st.integers(0, n))
    b = qbinom(n, k)
    assert b == qbinom(n, n - k)
    assert b.bar() == b
    assert qfact(n) == b * qfact(k) * qfact(n - k)
    if 0 < k < n:
        # the mirror Pascal rule
        assert b == qbinom(n - 1, k).shift(-k) + qbinom(n - 1, k - 1).shift(n - k)
