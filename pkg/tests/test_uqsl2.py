from fractions import Fraction

import pytest

from qhyperboloid import linalg
from qhyperboloid.qrat import Params, QField, evaluate_at
from qhyperboloid.algebra import (AlgebraElement, FUNCTION, ENVELOPING,
                                  basis_enumerate, casimir_words)
from qhyperboloid.uqsl2 import (TensorElement, X, Y, H, act_generator,
                                act_x_raw, algebra_highest_weight_vector,
                                casimir_apply, casimir_eigenvalue,
                                spin_decompose, spin_project,
                                tensor_substructure)


@pytest.fixture(scope="module")
def params():
    return Params(QField(), c=1, tau=4)


class TestActionTable:
    def test_generators(self, params):
        q = params.field.q
        u = AlgebraElement.generator(params, "u")
        v = AlgebraElement.generator(params, "v")
        w = AlgebraElement.generator(params, "w")
        assert act_generator(X, u).is_zero()
        assert act_generator(X, v) == u.scale(-(q + q ** -1))
        assert act_generator(X, w) == v
        assert act_generator(Y, u) == -v
        assert act_generator(Y, v) == w.scale(q + q ** -1)
        assert act_generator(Y, w).is_zero()
        assert act_generator(H, u) == u.scale(params.field.of(2))
        assert act_generator(H, v).is_zero()
        assert act_generator(H, w) == w.scale(params.field.of(-2))

    def test_coproduct_on_word(self, params):
        # X.(uv) = (X.u) v + q^{-H} u (X.v) = -(1/q + 1/q^3) uu
        q = params.field.q
        uv = AlgebraElement.from_word(params, "uv")
        want = AlgebraElement.from_word(params, "uu").scale(
            -(q ** -1 + q ** -3))
        assert act_generator(X, uv) == want

    def test_qh_scaling(self, params):
        q = params.field.q
        uv = AlgebraElement.from_word(params, "uv")
        assert act_generator(("QH", 2), uv) == uv.scale(q ** 4)
        assert act_generator(("QH", 0), uv) == uv


class TestCasimir:
    def test_spin1_eigenvalue(self, params):
        q = params.field.q
        u = AlgebraElement.generator(params, "u")
        lam1 = (q ** 3 - 2 + q ** -3) / (q - q ** -1) ** 2
        assert casimir_eigenvalue(params.field, 1) == lam1
        assert casimir_apply(u) == u.scale(lam1)

    def test_unit_eigenvalue(self, params):
        one = AlgebraElement.one(params)
        lam0 = casimir_eigenvalue(params.field, 0)
        assert casimir_apply(one) == one.scale(lam0)

    @pytest.mark.parametrize("k", range(7))
    def test_classical_limit(self, k):
        lam = casimir_eigenvalue(QField(), k)
        assert evaluate_at(lam, 1) == Fraction((2 * k + 1) ** 2, 4)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_chain_eigenvectors(self, params, k):
        lam = casimir_eigenvalue(params.field, k)
        for t in tensor_substructure(params.field, k):
            assert (casimir_apply(t) - t.scale(lam)).is_zero()

    def test_eigenvalues_distinct(self, params):
        lams = [casimir_eigenvalue(params.field, k) for k in range(7)]
        assert len({hash(l) for l in lams}) == 7
        for i, a in enumerate(lams):
            for b in lams[i + 1:]:
                assert a != b


def _hw_oracle_decompose(elem):
    """Independent spin decomposition: build the highest-weight chain basis
    by X-kernel extraction, then expand the element in that basis."""
    params, tag = elem.params, elem.tag
    field = params.field
    n = elem.degree()
    basis_vectors = []
    spans = {}
    for k in range(n + 1):
        hw = algebra_highest_weight_vector(params, k, n, tag)
        chain = [hw]
        for _ in range(2 * k):
            chain.append(act_generator(Y, chain[-1]))
        spans[k] = chain
        basis_vectors.extend((k, vec) for vec in chain)
    keys = sorted({w for _, vec in basis_vectors for w in vec.poly})
    matrix = [[vec.poly.get(w, field.zero) for _, vec in basis_vectors]
              for w in keys]
    solver = linalg.LinearSolver(matrix, field.zero, field.one)
    coords = solver.solve([elem.poly.get(w, field.zero) for w in keys])
    assert coords is not None
    comps = {}
    for (k, vec), coef in zip(basis_vectors, coords):
        if coef:
            part = vec.scale(coef)
            comps[k] = comps[k] + part if k in comps else part
    return {k: c for k, c in comps.items() if not c.is_zero()}


class TestSpinDecompose:
    def test_generator_is_pure(self, params):
        u = AlgebraElement.generator(params, "u")
        comps = spin_decompose(u)
        assert set(comps) == {1} and comps[1] == u

    def test_uv_is_pure_spin2(self, params):
        uv = AlgebraElement.from_word(params, "uv")
        comps = spin_decompose(uv)
        assert set(comps) == {2} and comps[2] == uv

    def test_casimir_tensor_is_spin0(self, params):
        cas = TensorElement(2, casimir_words(params), params.field)
        assert set(spin_decompose(cas)) == {0}

    def test_resolution_of_identity(self, params):
        for w in basis_enumerate(4, FUNCTION):
            x = AlgebraElement.from_word(params, w)
            comps = spin_decompose(x)
            total = AlgebraElement.zero(params)
            for comp in comps.values():
                total = total + comp
            assert (total - x).is_zero()
            for k, comp in comps.items():
                assert (spin_project(comp, k, max(comps)) - comp).is_zero()

    def test_against_highest_weight_oracle(self, params):
        samples = ["uv", "uvv", "vv", "uuw", "vww", "uuvv"]
        for w in samples:
            x = AlgebraElement.from_word(params, w)
            got = spin_decompose(x)
            want = _hw_oracle_decompose(x)
            assert set(got) == set(want), w
            for k in got:
                assert (got[k] - want[k]).is_zero(), (w, k)

    def test_multiplicity_freeness(self, params):
        for k in range(7):
            algebra_highest_weight_vector(params, k, 6)


class TestTensorSubstructure:
    def test_chain_length(self, params):
        for k in (1, 2, 3):
            chain = tensor_substructure(params.field, k)
            assert len(chain) == 2 * k + 1
            assert not act_x_raw(chain[0].data, params.field)

    def test_k2_span_matches_stated(self, params):
        field = params.field
        q = field.q
        one = field.one
        stated = [
            TensorElement(2, {"uu": one}, field),
            TensorElement(2, {"uv": one, "vu": q ** 2}, field),
            TensorElement(2, {"uw": one, "vv": -q, "wu": q ** 4}, field),
            TensorElement(2, {"vw": one, "wv": q ** 2}, field),
            TensorElement(2, {"ww": one}, field),
        ]
        chain = tensor_substructure(field, 2)
        keys = sorted({w for t in chain + stated for w in t.data})
        m_chain = [[t.data.get(w, field.zero) for t in chain] for w in keys]
        m_both = [[t.data.get(w, field.zero) for t in chain + stated]
                  for w in keys]
        assert linalg.rank(m_chain, field.zero, field.one) == 5
        assert linalg.rank(m_both, field.zero, field.one) == 5


class TestOperatorRelations:
    @pytest.mark.parametrize("tag", [FUNCTION, ENVELOPING])
    def test_eq9_on_basis(self, params, tag):
        p = params if tag == FUNCTION else params.with_hbar_enveloping()
        q = p.field.q
        for w in basis_enumerate(3, tag):
            x = AlgebraElement.from_word(p, w, tag)
            hx_xh = act_generator(H, act_generator(X, x)) \
                - act_generator(X, act_generator(H, x))
            assert (hx_xh - act_generator(X, x).scale(p.field.of(2))).is_zero()
            xy_yx = act_generator(X, act_generator(Y, x)) \
                - act_generator(Y, act_generator(X, x))
            mu = x.weight()
            scalar = (p.field.qpow(mu) - p.field.qpow(-mu)) / (q - q ** -1)
            assert (xy_yx - x.scale(scalar)).is_zero()

    def test_module_algebra_covariance(self, params):
        for w1 in basis_enumerate(2, FUNCTION):
            for w2 in basis_enumerate(2, FUNCTION):
                a = AlgebraElement.from_word(params, w1)
                b = AlgebraElement.from_word(params, w2)
                lhs = act_generator(X, a * b)
                rhs = act_generator(X, a) * b \
                    + act_generator(("QH", -1), a) * act_generator(X, b)
                assert (lhs - rhs).is_zero()
                lhs = act_generator(Y, a * b)
                rhs = a * act_generator(Y, b) \
                    + act_generator(Y, a) * act_generator(("QH", 1), b)
                assert (lhs - rhs).is_zero()
