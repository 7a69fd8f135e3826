import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qhyperboloid import linalg
from qhyperboloid.qrat import Params, QField, evaluate_at
from qhyperboloid.algebra import (AlgebraElement, AlgebraError, ENVELOPING,
                                  FUNCTION, basis_enumerate, casimir_words,
                                  expected_basis_size, is_normal_word,
                                  reduce_word, reduce_word_random)


@pytest.fixture(scope="module")
def params():
    return Params(QField(), c=1, tau=4)


@pytest.fixture(scope="module")
def penv(params):
    return params.with_hbar_enveloping()


def elem(params, word, tag=FUNCTION):
    return AlgebraElement.from_word(params, word, tag)


class TestRewriting:
    def test_vu(self, params):
        q = params.field.q
        assert elem(params, "vu") == elem(params, "uv").scale(q ** 2)

    def test_wv(self, params):
        q = params.field.q
        assert elem(params, "wv") == elem(params, "vw").scale(q ** 2)

    def test_uw_wu_against_linear_oracle(self, params):
        # oracle: solve the 2x2 system from the third relation and the
        # Casimir constraint, independently of rewriting
        q = params.field.q
        field = params.field
        # unknowns (uw_1, uw_vv, wu_1, wu_vv)
        rows = [
            [q ** 3 + q, field.zero, -(q ** 3 + q), field.zero],
            [field.zero, q ** 3 + q, field.zero, -(q ** 3 + q)],
            [q ** 3 + q, field.zero, q + q ** -1, field.zero],
            [field.zero, q ** 3 + q, field.zero, q + q ** -1],
        ]
        rhs = [field.zero, -(1 - q ** 2), params.c, -field.one]
        sol = linalg.LinearSolver(rows, field.zero, field.one).solve_unique(rhs)
        uw = elem(params, "uw")
        wu = elem(params, "wu")
        assert uw.poly.get("", field.zero) == sol[0]
        assert uw.poly.get("vv", field.zero) == sol[1]
        assert wu.poly.get("", field.zero) == sol[2]
        assert wu.poly.get("vv", field.zero) == sol[3]
        # classical cross-check: uw = c/4 - vv/4 at q = 1
        assert evaluate_at(sol[0], 1) == Fraction(1, 4)
        assert evaluate_at(sol[1], 1) == Fraction(-1, 4)

    def test_uw_explicit_form(self, params):
        q = params.field.q
        uw = elem(params, "uw")
        want = {"": q * params.c / (1 + q ** 2) ** 2,
                "vv": -1 / (q * (1 + q ** 2) ** 2)}
        assert uw.poly == want

    def test_separated_pair_reduces(self, params):
        # uvw has no adjacent redex but is not a basis word
        nf = elem(params, "uvw")
        assert all(is_normal_word(w, FUNCTION) for w in nf.poly)
        q = params.field.q
        want = elem(params, "v").scale(q ** -1 * params.c / (1 + q ** 2) ** 2) \
            + elem(params, "vvv").scale(-(q ** -3) / (1 + q ** 2) ** 2)
        assert nf == want

    def test_casimir_reduces_to_c(self, params):
        cas = AlgebraElement(casimir_words(params), FUNCTION, params)
        assert cas == AlgebraElement.scalar(params, params.c)

    def test_casimir_times_u(self, params):
        cas = AlgebraElement(casimir_words(params), FUNCTION, params)
        u = AlgebraElement.generator(params, "u")
        assert cas * u == u.scale(params.c)

    def test_enveloping_keeps_uw(self, penv):
        nf = elem(penv, "uw", ENVELOPING)
        assert nf.poly == {"uw": penv.field.one}

    def test_hbar_rule(self, penv):
        q = penv.field.q
        got = elem(penv, "vu", ENVELOPING)
        want = elem(penv, "uv", ENVELOPING).scale(q ** 2) \
            + elem(penv, "u", ENVELOPING).scale(2 * penv.hbar)
        assert got == want


class TestBasis:
    @pytest.mark.parametrize("n", range(7))
    def test_function_counts(self, n):
        assert len(basis_enumerate(n, FUNCTION)) == (n + 1) ** 2

    @pytest.mark.parametrize("n", range(7))
    def test_enveloping_counts(self, n):
        assert len(basis_enumerate(n, ENVELOPING)) == expected_basis_size(
            n, ENVELOPING)

    def test_degree_one_function(self):
        assert basis_enumerate(1, FUNCTION) == ["", "u", "v", "w"]

    def test_basis_words_irreducible(self, params):
        for tag in (FUNCTION, ENVELOPING):
            for w in basis_enumerate(5, tag):
                assert reduce_word(w, params, tag) == {w: params.field.one}

    def test_negative_degree(self):
        with pytest.raises(AlgebraError):
            basis_enumerate(-1, FUNCTION)


words = st.text(alphabet="uvw", min_size=0, max_size=6)


@settings(max_examples=120, deadline=None)
@given(words, st.integers(0, 2 ** 30))
def test_confluence_function(word, seed):
    params = Params(QField(), c=1, tau=4)
    rng = random.Random(seed)
    got = reduce_word_random(word, params, FUNCTION, rng)
    assert got == reduce_word(word, params, FUNCTION)
    assert all(is_normal_word(w, FUNCTION) for w in got)


@settings(max_examples=80, deadline=None)
@given(words, st.integers(0, 2 ** 30))
def test_confluence_enveloping_with_hbar(word, seed):
    params = Params(QField(), c=1, tau=4).with_hbar_enveloping()
    rng = random.Random(seed)
    got = reduce_word_random(word, params, ENVELOPING, rng)
    assert got == reduce_word(word, params, ENVELOPING)


class TestWeight:
    def test_examples(self, params):
        assert elem(params, "uv").weight() == 2
        u = AlgebraElement.generator(params, "u")
        w = AlgebraElement.generator(params, "w")
        assert (u + w).weight() is None
        assert elem(params, "vvv").weight() == 0

    @settings(max_examples=60, deadline=None)
    @given(words, words)
    def test_additivity(self, w1, w2):
        params = Params(QField(), c=1, tau=4)
        a = AlgebraElement.from_word(params, w1)
        b = AlgebraElement.from_word(params, w2)
        ab = a * b
        if a.is_zero() or b.is_zero() or ab.is_zero():
            return
        wa, wb = a.weight(), b.weight()
        if wa is None or wb is None:
            return
        assert ab.weight() == wa + wb


class TestCentrality:
    def test_casimir_central_with_enveloping_hbar(self, penv):
        cas = casimir_words(penv)
        for w in basis_enumerate(4, ENVELOPING):
            x = AlgebraElement.from_word(penv, w, ENVELOPING)
            cx = AlgebraElement(cas, ENVELOPING, penv) * x
            xc = x * AlgebraElement(cas, ENVELOPING, penv)
            assert (cx - xc).is_zero(), w


class TestProducts:
    def test_unit(self, params):
        u = AlgebraElement.generator(params, "u")
        assert AlgebraElement.one(params) * u == u

    def test_u_times_v(self, params):
        u = AlgebraElement.generator(params, "u")
        v = AlgebraElement.generator(params, "v")
        assert u * v == elem(params, "uv")
        assert v * u == elem(params, "uv").scale(params.field.q ** 2)

    def test_tag_mismatch(self, params):
        u = AlgebraElement.generator(params, "u", FUNCTION)
        v = AlgebraElement.generator(params, "v", ENVELOPING)
        with pytest.raises(AlgebraError, match="tag"):
            u * v

    def test_str_reparses_words(self, params):
        text = str(elem(params, "uuv") + elem(params, "vw").scale(
            params.field.q ** -1))
        assert "u^2*v" in text
