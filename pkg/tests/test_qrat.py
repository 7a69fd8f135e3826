from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qhyperboloid.qrat import (Params, ParamsError, QField, QRatError, RatFunc,
                               evaluate_at, parse_ratfunc, q_integer)

Q = RatFunc.gen()


def ratfunc(num, den=(1,)):
    return RatFunc([Fraction(c) for c in num], [Fraction(c) for c in den])


class TestCanonicalForm:
    def test_factor_cancellation(self):
        assert ratfunc([-1, 0, 1], [-1, 1]) == Q + 1

    def test_zero_canonical(self):
        f = ratfunc([], [0, 0, 0, 1])
        assert f.is_zero()
        assert f.num == () and f.den == (Fraction(1),)

    def test_content_normalization(self):
        assert ratfunc([0, 2], [2]) == Q

    def test_monic_denominator_and_coprime(self):
        f = (Q ** 2 + 1) / (Q ** 3 + Q)
        assert f == 1 / Q
        assert f.den[-1] == 1

    def test_zero_denominator_rejected(self):
        with pytest.raises(QRatError, match="division by zero"):
            ratfunc([1], [])
        with pytest.raises(QRatError, match="division by zero"):
            (Q + 1) / RatFunc.of(0)

    def test_laurent_terms(self):
        f = RatFunc.from_terms({-2: Fraction(1), 1: Fraction(3)})
        assert f == 1 / Q ** 2 + 3 * Q


class TestEvaluate:
    def test_m_at_one(self):
        params = Params(QField(), c=1, tau=4)
        assert evaluate_at(params.M, 1) == 2

    def test_kappa_at_one(self):
        params = Params(QField(), c=1, tau=4)
        assert evaluate_at(params.kappa, 1) == Fraction(1, 2)

    def test_pole_names_factor(self):
        with pytest.raises(QRatError, match=r"q - 1"):
            evaluate_at(1 / (Q - 1), 1)

    def test_zero_rejected(self):
        with pytest.raises(QRatError, match="q = 0"):
            evaluate_at(Q, 0)

    def test_negative_pole_message(self):
        with pytest.raises(QRatError, match=r"q \+ 2"):
            evaluate_at(1 / (Q + 2), -2)


class TestQInteger:
    def test_one(self):
        assert q_integer(QField(), 1) == RatFunc.of(1)

    def test_two(self):
        assert q_integer(QField(), 2) == Q + Q ** -1

    def test_three_at_one(self):
        assert evaluate_at(q_integer(QField(), 3), 1) == 3

    def test_usage_error(self):
        with pytest.raises(QRatError):
            q_integer(QField(), 0)


small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def ratfuncs(draw):
    terms = draw(st.dictionaries(st.integers(-3, 3), small_fractions,
                                 min_size=0, max_size=3))
    return RatFunc.from_terms({k: v for k, v in terms.items() if v})


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == RatFunc.of(0)
    if c:
        assert (a / c) * c == a


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_evaluate_is_morphism(a, b):
    for q0 in (Fraction(2), Fraction(3, 2), Fraction(-2)):
        try:
            lhs = evaluate_at(a * b, q0)
            rhs = evaluate_at(a, q0) * evaluate_at(b, q0)
            assert lhs == rhs
            assert evaluate_at(a + b, q0) == evaluate_at(a, q0) + evaluate_at(b, q0)
        except QRatError:
            pass


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_print_parse_roundtrip(a, b):
    if not b:
        b = RatFunc.of(1)
    f = a / b
    assert parse_ratfunc(str(f)) == f


class TestParams:
    def test_c_zero_rejected(self):
        with pytest.raises(ParamsError, match="cone"):
            Params(QField(), c=0)

    def test_tau_zero_rejected(self):
        with pytest.raises(ParamsError):
            Params(QField(), c=1, tau=0)

    def test_bad_hbar_rejected(self):
        with pytest.raises(ParamsError, match="kappa"):
            Params(QField(), c=1, tau=4, hbar=1)

    def test_enveloping_hbar_accepted(self):
        p = Params(QField(), c=1, tau=4)
        pe = p.with_hbar_enveloping()
        assert pe.hbar == pe.kappa * pe.tau / 2

    def test_numeric_field_guards(self):
        with pytest.raises(QRatError):
            QField(0)
        with pytest.raises(QRatError):
            QField(1)
        QField(1, allow_classical=True)
        p = Params(QField(2), c=1, tau=4)
        assert p.M == Fraction(4, 17)
