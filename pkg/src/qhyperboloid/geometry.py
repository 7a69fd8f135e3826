"""The braided (pseudo)metric and the partial braided connection.

Both tables are derived, not transcribed: the metric from equivariance,
q-symmetry and well-definedness against the module relation (a linear
system with a one-dimensional solution space, normalized so that
<U, U'> = uu), and the connection from the spin-2 seed

    nabla_U U = alpha (uv U - q^2 uu V)

propagated by the lowering recursion J_i = Y J_{i-1} / [i]_q together with
the torsion conditions and the annihilation of the module relation, which
force alpha = -2/((1 - q^2 + q^4) c). The published tables are compared
entry by entry and any mismatch is reported as typo-suspect along with the
constraint the printed form violates.
"""

from __future__ import annotations

from . import linalg
from .qrat import Params, QRatError, q_integer
from .algebra import (AlgebraElement, FUNCTION, basis_enumerate, poly_add_into,
                      word_weight)
from .uqsl2 import X, Y, H, act_x_raw, act_y_raw, weight_of
from .tangent import (LEFT, RIGHT, SYMBOLS, IdentifyMap, TangentElement,
                      TangentError, tangent_basis, k_raw_triple)

_SYM_WEIGHT = {"U": 2, "V": 0, "W": -2}
_LETTER = {"U": "u", "V": "v", "W": "w"}

PAIRS = [(a, b) for a in SYMBOLS for b in SYMBOLS]


class GeometryError(ValueError):
    pass


def _gen(params, letter):
    return AlgebraElement.generator(params, letter)


def _x_sym(sym, field):
    q = field.q
    if sym == "U":
        return ()
    if sym == "V":
        return (("U", -(q + q ** -1)),)
    return (("V", field.one),)


def _y_sym(sym, field):
    q = field.q
    if sym == "U":
        return (("V", -field.one),)
    if sym == "V":
        return (("W", q + q ** -1),)
    return ()


# ---------------------------------------------------------------------------
# the metric
# ---------------------------------------------------------------------------

class MetricTable:
    """The nine pairings <S, T'> in the function algebra, the normalization
    scale (fixed to 1 on the uu-coordinate of <U, U'>), and gamma."""

    def __init__(self, params: Params, entries: dict, gamma):
        self.params = params
        self.entries = entries
        self.gamma = gamma

    def entry(self, s: str, t: str) -> AlgebraElement:
        return self.entries[(s, t)]

    def pair(self, tl: TangentElement, tr: TangentElement) -> AlgebraElement:
        if tl.side != LEFT or tr.side != RIGHT:
            raise GeometryError("pair takes a left and a right tangent element")
        return self.pair_raw(tl.coeffs, tr.coeffs)

    def pair_raw(self, left_coeffs: dict, right_coeffs: dict) -> AlgebraElement:
        total = AlgebraElement.zero(self.params)
        for s in SYMBOLS:
            a = left_coeffs.get(s)
            if a is None or a.is_zero():
                continue
            for t in SYMBOLS:
                b = right_coeffs.get(t)
                if b is None or b.is_zero():
                    continue
                total = total + a * self.entries[(s, t)] * b
        return total


def metric_solve(params: Params) -> MetricTable:
    """Solve the metric constraints exactly; the solution family must be one
    dimensional (scaled so <U,U'> = uu)."""
    field = params.field
    q = field.q
    monomials = basis_enumerate(2, FUNCTION)
    unknowns = []
    for s, t in PAIRS:
        wt = _SYM_WEIGHT[s] + _SYM_WEIGHT[t]
        for m in monomials:
            if word_weight(m) == wt:
                unknowns.append((s, t, m))
    index = {u: i for i, u in enumerate(unknowns)}
    rows = []

    def empty():
        return [field.zero] * len(unknowns)

    def add_action_rows(gen):
        # gen . E_{ST} = sum <gen_(1) S, gen_(2) T'>  (coproduct expansion)
        act_raw = act_x_raw if gen == X else act_y_raw
        sym_img = _x_sym if gen == X else _y_sym
        for s, t in PAIRS:
            lhs: dict = {}
            for m in monomials:
                if word_weight(m) != _SYM_WEIGHT[s] + _SYM_WEIGHT[t]:
                    continue
                img = AlgebraElement(act_raw({m: field.one}, field), FUNCTION, params)
                for w2, c2 in img.poly.items():
                    lhs.setdefault(w2, {})[(s, t, m)] = c2
            rhs: dict = {}
            if gen == X:
                # (X S, T') + q^{-wt S} (S, X T')
                for s2, fac in _x_sym(s, field):
                    _entry_into(rhs, (s2, t), fac, index, monomials, field)
                for t2, fac in _x_sym(t, field):
                    _entry_into(rhs, (s, t2), fac * field.qpow(-_SYM_WEIGHT[s]),
                                index, monomials, field)
            else:
                # (S, Y T') + q^{wt T} (Y S, T')
                for t2, fac in _y_sym(t, field):
                    _entry_into(rhs, (s, t2), fac, index, monomials, field)
                for s2, fac in _y_sym(s, field):
                    _entry_into(rhs, (s2, t), fac * field.qpow(_SYM_WEIGHT[t]),
                                index, monomials, field)
            for w2 in set(lhs) | set(rhs):
                row = empty()
                for key, c in lhs.get(w2, {}).items():
                    row[index[key]] = row[index[key]] + c
                for key, c in rhs.get(w2, {}).items():
                    row[index[key]] = row[index[key]] - c
                if any(row):
                    rows.append(row)

    def _entry_into(acc, st, fac, index, monomials, field):
        s, t = st
        for m in monomials:
            if word_weight(m) == _SYM_WEIGHT[s] + _SYM_WEIGHT[t]:
                acc.setdefault(m, {})[(s, t, m)] = \
                    acc.get(m, {}).get((s, t, m), field.zero) + fac

    add_action_rows(X)
    add_action_rows(Y)

    # q-symmetry: the pairing kills the spin-1 symbol combinations
    sym_rels = [
        ((("U", "V"), q ** 2), (("V", "U"), -field.one)),
        ((("V", "W"), -q ** 2), (("W", "V"), field.one)),
        ((("U", "W"), q ** 3 + q), (("W", "U"), -(q ** 3 + q)),
         (("V", "V"), 1 - q ** 2)),
    ]
    for rel in sym_rels:
        per_word: dict = {}
        for (s, t), fac in rel:
            for m in monomials:
                if word_weight(m) == _SYM_WEIGHT[s] + _SYM_WEIGHT[t]:
                    per_word.setdefault(m, []).append(((s, t, m), fac))
        for m, terms in per_word.items():
            row = empty()
            for key, fac in terms:
                row[index[key]] = row[index[key]] + fac
            if any(row):
                rows.append(row)

    # well-definedness on the left: <K, z'> = 0 for every symbol z
    u, v, w = (_gen(params, ch) for ch in "uvw")
    kprefix = [("W", u.scale(q ** 3 + q)), ("V", v), ("U", w.scale(q + q ** -1))]
    for z in SYMBOLS:
        per_word: dict = {}
        for s, f in kprefix:
            for m in monomials:
                if word_weight(m) != _SYM_WEIGHT[s] + _SYM_WEIGHT[z]:
                    continue
                prod = f * AlgebraElement.from_word(params, m)
                for w2, c2 in prod.poly.items():
                    per_word.setdefault(w2, {})
                    key = (s, z, m)
                    per_word[w2][key] = per_word[w2].get(key, field.zero) + c2
        for w2, terms in per_word.items():
            row = empty()
            for key, c in terms.items():
                row[index[key]] = row[index[key]] + c
            if any(row):
                rows.append(row)

    kernel = linalg.nullspace(rows, field.zero, field.one)
    if len(kernel) != 1:
        raise GeometryError(
            f"metric constraint system has a {len(kernel)}-dimensional "
            f"solution space, expected 1")
    vec = kernel[0]
    norm = vec[index[("U", "U", "uu")]]
    if not norm:
        raise GeometryError("metric solution vanishes on the uu seed entry")
    entries = {}
    for s, t in PAIRS:
        poly: dict = {}
        for m in monomials:
            key = (s, t, m)
            if key in index and vec[index[key]]:
                poly[m] = vec[index[key]] / norm
        entries[(s, t)] = AlgebraElement(poly, FUNCTION, params, reduced=True)
    gamma_elem = (entries[("U", "W")].scale(q ** 3 + q) + entries[("V", "V")]
                  + entries[("W", "U")].scale(q + q ** -1))
    if set(gamma_elem.poly) - {""}:
        raise GeometryError("spin-0 pairing value is not a constant")
    gamma = gamma_elem.poly.get("", field.zero)
    return MetricTable(params, entries, gamma)


def metric_printed(params: Params) -> dict:
    """The published table (normalization k = 1), as stated."""
    q = params.field.q
    one = params.field.one

    def elem(*terms):
        poly: dict = {}
        for word, coef in terms:
            poly_add_into(poly, word, coef)
        return AlgebraElement(poly, FUNCTION, params)

    return {
        ("U", "U"): elem(("uu", one)),
        ("U", "V"): elem(("uv", one)),
        ("V", "U"): elem(("vu", one)),
        ("W", "V"): elem(("wv", one)),
        ("V", "V"): elem(("vv", 1 - q ** 2), ("uw", -(q ** -1) * (1 + q ** 2) ** 2)),
        ("W", "W"): elem(("ww", one)),
        ("U", "W"): elem(("vv", -(q ** -1) / (1 + q ** 2)), ("uw", -q ** 2)),
        ("V", "W"): elem(("vw", one)),
        ("W", "U"): elem(("vv", -q / (1 + q ** 2)), ("wu", -(q ** -2))),
    }


def metric_table_comparison(params: Params, table: MetricTable) -> list:
    """Per-entry derived vs printed comparison; mismatches are justified by
    the constraint the printed value breaks."""
    printed = metric_printed(params)
    q = params.field.q
    results = []
    for s, t in PAIRS:
        derived = table.entry(s, t)
        stated = printed[(s, t)]
        if derived == stated:
            results.append(((s, t), "agree", ""))
            continue
        reasons = []
        wt = _SYM_WEIGHT[s] + _SYM_WEIGHT[t]
        if any(word_weight(m) != wt for m in stated.poly):
            reasons.append("weight bookkeeping fails")
        # q-symmetry relation 3 with the other printed entries
        lhs = (printed[("U", "W")] - printed[("W", "U")]).scale(q ** 3 + q)
        rhs = printed[("V", "V")].scale(q ** 2 - 1)
        if not (lhs - rhs).is_zero():
            reasons.append("printed table violates the q-symmetry relation "
                           "(q^3+q)[<U,W'> - <W,U'>] = (q^2-1)<V,V'>")
        gamma_elem = (printed[("U", "W")].scale(q ** 3 + q) + printed[("V", "V")]
                      + printed[("W", "U")].scale(q + q ** -1))
        if set(gamma_elem.poly) - {""}:
            reasons.append("printed spin-0 combination is not constant")
        results.append(((s, t), "typo-suspect",
                        "; ".join(reasons) or "differs from the derived entry"))
    return results


def metric_checks(params: Params, table: MetricTable) -> list:
    """Covariance, q-symmetry, and well-definedness of the derived pairing."""
    field = params.field
    q = field.q
    results = []

    # covariance on the nine symbol pairs
    for z in (X, Y, H):
        for s, t in PAIRS:
            entry = table.entry(s, t)
            if z == H:
                lhs = AlgebraElement(
                    {m: c * weight_of(m) for m, c in entry.poly.items()
                     if weight_of(m)}, FUNCTION, params, reduced=True)
                rhs = entry.scale(field.of(_SYM_WEIGHT[s] + _SYM_WEIGHT[t]))
            elif z == X:
                lhs = AlgebraElement(act_x_raw(entry.poly, field), FUNCTION, params)
                rhs = AlgebraElement.zero(params)
                for s2, fac in _x_sym(s, field):
                    rhs = rhs + table.entry(s2, t).scale(fac)
                for t2, fac in _x_sym(t, field):
                    rhs = rhs + table.entry(s, t2).scale(
                        fac * field.qpow(-_SYM_WEIGHT[s]))
            else:
                lhs = AlgebraElement(act_y_raw(entry.poly, field), FUNCTION, params)
                rhs = AlgebraElement.zero(params)
                for t2, fac in _y_sym(t, field):
                    rhs = rhs + table.entry(s, t2).scale(fac)
                for s2, fac in _y_sym(s, field):
                    rhs = rhs + table.entry(s2, t).scale(
                        fac * field.qpow(_SYM_WEIGHT[t]))
            results.append((f"metric covariance {z} on <{s},{t}'>",
                            (lhs - rhs).is_zero(), ""))

    # q-symmetry
    rel1 = table.entry("U", "V").scale(q ** 2) - table.entry("V", "U")
    rel2 = table.entry("V", "W").scale(-q ** 2) + table.entry("W", "V")
    rel3 = (table.entry("U", "W") - table.entry("W", "U")).scale(q ** 3 + q) \
        - table.entry("V", "V").scale(q ** 2 - 1)
    results.append(("metric q-symmetry (U,V')", rel1.is_zero(), str(rel1)))
    results.append(("metric q-symmetry (V,W')", rel2.is_zero(), str(rel2)))
    results.append(("metric q-symmetry (U,W')-(W,U')", rel3.is_zero(), str(rel3)))

    # gamma value
    want = -(q ** -2) * (1 + q ** 4) * params.c
    results.append(("metric gamma = -q^-2 (1+q^4) c", table.gamma == want,
                    f"gamma = {table.gamma}"))

    # both annihilations
    u, v, w = (_gen(params, ch) for ch in "uvw")
    for z in SYMBOLS:
        left_k = (u * table.entry("W", z)).scale(q ** 3 + q) \
            + v * table.entry("V", z) \
            + (w * table.entry("U", z)).scale(q + q ** -1)
        results.append((f"metric <K, {z}'> = 0", left_k.is_zero(), str(left_k)))
    for z in SYMBOLS:
        right_k = (table.entry(z, "U") * w).scale(q ** 3 + q) \
            + table.entry(z, "V") * v \
            + (table.entry(z, "W") * u).scale(q + q ** -1)
        results.append((f"metric <{z}, K'> = 0", right_k.is_zero(), str(right_k)))
    return results


def metric_covariance_dressed(params: Params, table: MetricTable,
                              degree: int = 2) -> list:
    """Covariance z.<a, b> = <z_(1) a, z_(2) b> on coefficient-dressed pairs
    (f S, T' g) with monomial coefficients of degree <= `degree`."""
    field = params.field
    results = []
    words = [m for m in basis_enumerate(degree, FUNCTION)]
    samples = []
    for f in words[: 2 * degree + 3]:
        for s in SYMBOLS:
            for t in SYMBOLS:
                samples.append((f, s, t, ""))
                samples.append(("", s, t, f))
    seen = set()
    for f, s, t, g in samples:
        if (f, s, t, g) in seen:
            continue
        seen.add((f, s, t, g))
        tl = TangentElement({s: AlgebraElement.from_word(params, f)}, LEFT, params)
        tr = TangentElement({t: AlgebraElement.from_word(params, g)}, RIGHT, params)
        val = table.pair(tl, tr)
        for z in (X, Y, H):
            if z == H:
                lhs = AlgebraElement(
                    {m: c * weight_of(m) for m, c in val.poly.items()
                     if weight_of(m)}, FUNCTION, params, reduced=True)
                rhs = table.pair(tl.act(H), tr) + table.pair(tl, tr.act(H))
            elif z == X:
                lhs = AlgebraElement(act_x_raw(val.poly, field), FUNCTION, params)
                rhs = table.pair(tl.act(X), tr) + table.pair(
                    tl.act(("QH", -1)), tr.act(X))
            else:
                lhs = AlgebraElement(act_y_raw(val.poly, field), FUNCTION, params)
                rhs = table.pair(tl, tr.act(Y)) + table.pair(
                    tl.act(Y), tr.act(("QH", 1)))
            ok = (lhs - rhs).is_zero()
            results.append((f"metric covariance {z} on ({f or '1'}*{s}, "
                            f"{t}'*{g or '1'})", ok, ""))
    return results


def metric_k_invariance(params: Params, table: MetricTable,
                        degree: int = 2) -> list:
    """The pairing is blind to adding K-multiples on either side."""
    results = []
    for word in basis_enumerate(degree, FUNCTION):
        f = AlgebraElement.from_word(params, word)
        kl = {s: f * a for s, a in k_raw_triple(params, LEFT).items()}
        z = {"V": AlgebraElement.one(params)}
        val = table.pair_raw(kl, z)
        results.append((f"pair(({word or '1'})K, V') = 0", val.is_zero(), str(val)))
        kr = {s: a * f for s, a in k_raw_triple(params, RIGHT).items()}
        val = table.pair_raw(z, kr)
        results.append((f"pair(V, K'({word or '1'})) = 0", val.is_zero(), str(val)))
    return results


class MetricLeft:
    """The pairing on two left arguments, through the canonical left/right
    identification."""

    def __init__(self, table: MetricTable, identify: IdentifyMap):
        self.table = table
        self.identify = identify

    def __call__(self, a: TangentElement, b: TangentElement) -> AlgebraElement:
        return self.table.pair(a, self.identify.apply(b))


# ---------------------------------------------------------------------------
# the connection
# ---------------------------------------------------------------------------

class _Affine:
    """A tangent element depending affinely on the connection scale:
    value = const + alpha * lin."""

    __slots__ = ("const", "lin")

    def __init__(self, const: TangentElement, lin: TangentElement):
        self.const = const
        self.lin = lin

    @staticmethod
    def of_const(t: TangentElement) -> "_Affine":
        return _Affine(t, TangentElement.zero(t.params, t.side))

    @staticmethod
    def of_lin(t: TangentElement) -> "_Affine":
        return _Affine(TangentElement.zero(t.params, t.side), t)

    def __add__(self, other):
        return _Affine(self.const + other.const, self.lin + other.lin)

    def __sub__(self, other):
        return _Affine(self.const - other.const, self.lin - other.lin)

    def scale(self, s):
        return _Affine(self.const.scale(s), self.lin.scale(s))

    def act_y(self):
        return _Affine(self.const.act(Y), self.lin.act(Y))

    def resolve(self, alpha) -> TangentElement:
        return self.const + self.lin.scale(alpha)


class ConnectionTable:
    """The nine covariant derivatives nabla_S T as canonical left tangent
    elements, the constants alpha and beta, and the chain J_0..J_4."""

    def __init__(self, params: Params, entries: dict, alpha, js: list):
        self.params = params
        self.entries = entries
        self.alpha = alpha
        self.beta = 1 / (1 + params.field.q ** 4)
        self.js = js
        self._sym_solver = None

    def entry(self, s: str, t: str) -> TangentElement:
        return self.entries[(s, t)]

    def _direction_constants(self, b) -> dict:
        """Expand a direction argument in the span of the three canonical
        symbol classes; a module element outside that span is rejected
        (the connection is only partially defined)."""
        params = self.params
        field = params.field
        if isinstance(b, str):
            if b not in SYMBOLS:
                raise GeometryError(f"unknown field symbol {b!r}")
            return {b: field.one}
        if self._sym_solver is None:
            images = [TangentElement.symbol(params, s, LEFT) for s in SYMBOLS]
            keys = sorted({k for e in images for k in e.coords()})
            matrix = [[e.coords().get(k, field.zero) for e in images] for k in keys]
            self._sym_solver = (keys, linalg.LinearSolver(matrix, field.zero,
                                                          field.one))
        keys, solver = self._sym_solver
        coords = b.coords()
        if set(coords) - set(keys):
            raise GeometryError(
                "partial connection: the direction argument must be a "
                "constant combination of the field symbols")
        sol = solver.solve([coords.get(k, field.zero) for k in keys])
        if sol is None:
            raise GeometryError(
                "partial connection: the direction argument must be a "
                "constant combination of the field symbols")
        return dict(zip(SYMBOLS, sol))

    def connect(self, a: TangentElement, b) -> TangentElement:
        """nabla_a b; b is a symbol or a constant symbol combination."""
        params = self.params
        consts = self._direction_constants(b)
        out = TangentElement.zero(params, LEFT)
        for s in SYMBOLS:
            a_s = a.coeffs[s]
            if a_s.is_zero():
                continue
            for t in SYMBOLS:
                if consts.get(t):
                    out = out + self.entries[(s, t)].scale(consts[t]).module_mul(a_s)
        return out


def connection_derive(params: Params) -> ConnectionTable:
    """Solve for the connection table and the scale alpha."""
    field = params.field
    q = field.q
    beta = 1 / (1 + q ** 4)
    u, v, w = (_gen(params, ch) for ch in "uvw")
    zero_t = TangentElement.zero(params, LEFT)

    def sym_elem(s):
        return TangentElement.symbol(params, s, LEFT)

    # seed: nabla_U U = alpha (uv U - q^2 uu V)
    j0_lin = TangentElement({
        "U": AlgebraElement.from_word(params, "uv"),
        "V": AlgebraElement.from_word(params, "uu").scale(-q ** 2),
    }, LEFT, params)
    js = [_Affine.of_lin(j0_lin)]
    for i in range(1, 5):
        js.append(js[-1].act_y().scale(1 / q_integer(field, i)))

    entries: dict = {("U", "U"): js[0]}
    # from -n_UV - q^2 n_VU = J_1 and q^2 n_UV - n_VU = -2U
    entries[("U", "V")] = (js[1] + _Affine.of_const(sym_elem("U").scale(2 * q ** 2))
                           ).scale(-beta)
    entries[("V", "U")] = (_Affine.of_const(sym_elem("U").scale(2))
                           - js[1].scale(q ** 2)).scale(beta)
    # from n_VW + q^2 n_WV = J_3 and -q^2 n_VW + n_WV = 2W
    entries[("V", "W")] = (js[3] - _Affine.of_const(sym_elem("W").scale(2 * q ** 2))
                           ).scale(beta)
    entries[("W", "V")] = (js[3].scale(q ** 2)
                           + _Affine.of_const(sym_elem("W").scale(2))).scale(beta)

    # joint solve for n_WU, n_UW, n_VV and alpha:
    #   E1: -n_UW + q n_VV - q^4 n_WU = J_2
    #   E2: (q^3+q)(n_UW - n_WU) + (1-q^2) n_VV = 2V
    #   E3: (q^3+q) u n_WU + v n_VU + (q+1/q) w n_UU = 0
    basis = tangent_basis(params, 2)
    bvecs = basis.elements
    nb = len(bvecs)
    u_times = [b.module_mul(u) for b in bvecs]

    cols = 3 * nb + 1  # n_WU coords, n_UW coords, n_VV coords, alpha

    def coord_items(t: TangentElement):
        return t.coords().items()

    equations: dict = {}

    def eq_add(eq_name, key, col, value):
        equations.setdefault((eq_name, key), [field.zero] * (cols + 1))
        equations[(eq_name, key)][col] = equations[(eq_name, key)][col] + value

    for i, b in enumerate(bvecs):
        for key, val in coord_items(b):
            # E1: -n_UW + q n_VV - q^4 n_WU - alpha J2lin = 0
            eq_add("E1", key, nb + i, -val)
            eq_add("E1", key, 2 * nb + i, q * val)
            eq_add("E1", key, i, -(q ** 4) * val)
            # E2: (q^3+q) n_UW - (q^3+q) n_WU + (1-q^2) n_VV = 2V
            eq_add("E2", key, nb + i, (q ** 3 + q) * val)
            eq_add("E2", key, i, -(q ** 3 + q) * val)
            eq_add("E2", key, 2 * nb + i, (1 - q ** 2) * val)
        for key, val in coord_items(u_times[i]):
            # E3: (q^3+q) u n_WU + ... = 0
            eq_add("E3", key, i, (q ** 3 + q) * val)

    # alpha columns and constant sides
    for key, val in coord_items(js[2].lin):
        eq_add("E1", key, cols - 1, -val)
    rhs_e2 = sym_elem("V").scale(2)
    for key, val in coord_items(rhs_e2):
        eq_add("E2", key, cols, -val)  # move to the left-hand side
    # E3 pieces from the solved entries
    nvu = entries[("V", "U")]
    e3_const = nvu.const.module_mul(v)
    e3_lin = nvu.lin.module_mul(v) + js[0].lin.module_mul(w).scale(q + q ** -1)
    for key, val in coord_items(e3_const):
        eq_add("E3", key, cols, val)
    for key, val in coord_items(e3_lin):
        eq_add("E3", key, cols - 1, val)

    matrix = [row[:cols] for row in equations.values()]
    rhs = [-row[cols] for row in equations.values()]
    solver = linalg.LinearSolver(matrix, field.zero, field.one)
    if solver.rank != cols:
        raise GeometryError(
            f"connection system is underdetermined (rank {solver.rank} of {cols})")
    sol = solver.solve(rhs)
    if sol is None:
        raise GeometryError("connection constraint system is inconsistent")
    alpha = sol[cols - 1]
    want = -2 / ((1 - q ** 2 + q ** 4) * params.c)
    if alpha != want:
        raise GeometryError(f"derived alpha = {alpha}, expected {want}")

    def from_coords(offset):
        out = zero_t
        for i, b in enumerate(bvecs):
            if sol[offset + i]:
                out = out + b.scale(sol[offset + i])
        return out

    table = {
        ("W", "U"): from_coords(0),
        ("U", "W"): from_coords(nb),
        ("V", "V"): from_coords(2 * nb),
    }
    resolved = {st: aff.resolve(alpha) for st, aff in entries.items()}
    resolved.update(table)
    resolved[("W", "W")] = js[4].resolve(alpha)
    j_resolved = [aff.resolve(alpha) for aff in js]
    return ConnectionTable(params, resolved, alpha, j_resolved)


def connection_checks(params: Params, table: ConnectionTable) -> list:
    """Annihilation, torsion, spin conditions, covariance, and the lowering
    recursion on the derived table."""
    field = params.field
    q = field.q
    u, v, w = (_gen(params, ch) for ch in "uvw")
    results = []

    # the module relation annihilates the connection in every direction
    for z in SYMBOLS:
        total = table.entry("W", z).module_mul(u).scale(q ** 3 + q) \
            + table.entry("V", z).module_mul(v) \
            + table.entry("U", z).module_mul(w).scale(q + q ** -1)
        results.append((f"connection relation annihilation at {z}",
                        total.is_zero(), str(total)))

    # spin-0 annihilation
    spin0 = table.entry("U", "W").scale(q ** 3 + q) + table.entry("V", "V") \
        + table.entry("W", "U").scale(q + q ** -1)
    results.append(("connection spin-0 annihilation", spin0.is_zero(), str(spin0)))

    # torsion: the three spin-1 combinations hit the bracket images with one
    # common scalar s (s tau = 2)
    combos = [
        ("q^2 n_UV - n_VU", table.entry("U", "V").scale(q ** 2)
         - table.entry("V", "U"), "U", -1),
        ("(q^3+q)(n_UW - n_WU) + (1-q^2) n_VV",
         (table.entry("U", "W") - table.entry("W", "U")).scale(q ** 3 + q)
         + table.entry("V", "V").scale(1 - q ** 2), "V", 1),
        ("-q^2 n_VW + n_WV", table.entry("V", "W").scale(-q ** 2)
         + table.entry("W", "V"), "W", 1),
    ]
    scalars = []
    for name, combo, sym, sign in combos:
        target = TangentElement.symbol(params, sym).scale(params.tau * sign)
        s = _tangent_ratio(combo, target)
        scalars.append((name, s))
    svals = {s for _, s in scalars if s is not None}
    common = len(svals) == 1 and all(s is not None for _, s in scalars)
    s = svals.pop() if len(svals) == 1 else None
    results.append(("torsion: common scalar across the three combinations",
                    common, f"scalars {[(n, str(sv)) for n, sv in scalars]}"))
    if common:
        results.append(("torsion scalar satisfies s*tau = 2",
                        s * params.tau == 2 * field.one, f"s = {s}"))

    # covariance z . nabla_S T = nabla(Delta z (S (x) T))
    for z in (X, Y, H):
        for s0, t0 in PAIRS:
            entry = table.entry(s0, t0)
            lhs = entry.act(z)
            rhs = TangentElement.zero(params, LEFT)
            if z == H:
                rhs = entry.scale(field.of(_SYM_WEIGHT[s0] + _SYM_WEIGHT[t0]))
            elif z == X:
                for s2, fac in _x_sym(s0, field):
                    rhs = rhs + table.entry(s2, t0).scale(fac)
                for t2, fac in _x_sym(t0, field):
                    rhs = rhs + table.entry(s0, t2).scale(
                        fac * field.qpow(-_SYM_WEIGHT[s0]))
            else:
                for t2, fac in _y_sym(t0, field):
                    rhs = rhs + table.entry(s0, t2).scale(fac)
                for s2, fac in _y_sym(s0, field):
                    rhs = rhs + table.entry(s2, t0).scale(
                        fac * field.qpow(_SYM_WEIGHT[t0]))
            results.append((f"connection covariance {z} on ({s0},{t0})",
                            (lhs - rhs).is_zero(), ""))

    # the lowering recursion reproduces the solved entries
    rels = [
        ("-n_UV - q^2 n_VU = J_1",
         table.entry("U", "V").scale(-field.one)
         - table.entry("V", "U").scale(q ** 2), 1),
        ("-n_UW + q n_VV - q^4 n_WU = J_2",
         table.entry("U", "W").scale(-field.one) + table.entry("V", "V").scale(q)
         - table.entry("W", "U").scale(q ** 4), 2),
        ("n_VW + q^2 n_WV = J_3",
         table.entry("V", "W") + table.entry("W", "V").scale(q ** 2), 3),
        ("n_WW = J_4", table.entry("W", "W"), 4),
    ]
    for name, combo, i in rels:
        results.append((f"recursion {name}", (combo - table.js[i]).is_zero(), ""))
    ycheck = all((table.js[i] - table.js[i - 1].act(Y).scale(
        1 / q_integer(field, i))).is_zero() for i in range(1, 5))
    results.append(("J_i = Y J_(i-1) / [i]_q chain", ycheck, ""))

    # spin-2 family: nabla on the Y-orbit of U (x) U stays on the J-chain
    pair_words = {"UU": field.one}
    fact = field.one
    for j in range(5):
        image = TangentElement.zero(params, LEFT)
        for word, coef in pair_words.items():
            image = image + table.entry(word[0], word[1]).scale(coef)
        target = table.js[j].scale(fact)
        results.append((f"spin-2 image Y^{j}(U (x) U) stays on the J-chain",
                        (image - target).is_zero(), ""))
        pair_words = act_y_raw(pair_words, field)
        if j < 4:
            fact = fact * q_integer(field, j + 1)
    return results


def connection_printed(params: Params) -> dict:
    """The published table, transcribed as stated (weight defects included)."""
    q = params.field.q
    one = params.field.one
    alpha = -2 / ((1 - q ** 2 + q ** 4) * params.c)
    beta = 1 / (1 + q ** 4)
    two = 1 / (q + q ** -1)

    def t(spec_map):
        coeffs = {}
        for sym, terms in spec_map.items():
            poly: dict = {}
            for word, coef in terms:
                poly_add_into(poly, word, coef)
            coeffs[sym] = AlgebraElement(poly, FUNCTION, params)
        return TangentElement(coeffs, LEFT, params)

    return {
        ("U", "U"): t({"U": [("uv", alpha)], "V": [("uw", -alpha * q ** 2)]}),
        ("W", "W"): t({"V": [("wv", alpha)], "W": [("vw", -alpha * q ** 4)]}),
        ("U", "V"): t({
            "U": [("uw", -alpha * beta * (q ** 3 + q)),
                  ("vv", alpha * beta * q ** 2), ("", -2 * beta * q ** 2)],
            "V": [("uv", -alpha * beta * (q ** 6 + q ** 2 - 1))],
            "W": [("uu", alpha * beta * (q ** 3 + q))]}),
        ("V", "U"): t({
            "U": [("uw", -alpha * beta * q ** 2 * (q ** 3 + q)),
                  ("vv", alpha * beta * q ** 4), ("", 2 * beta)],
            "V": [("uv", -alpha * beta * q ** 2 * (q ** 6 + q ** 2 - 1))],
            "W": [("uu", alpha * beta * q ** 2 * (q ** 3 + q))]}),
        ("V", "W"): t({
            "U": [("ww", -alpha * beta * q ** 3 * (1 + q ** 2))],
            "V": [("vw", alpha * beta * (1 + q ** 4 - q ** 6))],
            "W": [("uw", alpha * beta * q ** 4 * (q + q ** -1)),
                  ("vv", -alpha * beta * q ** 4), ("", -2 * beta * q ** 2)]}),
        ("W", "V"): t({
            "U": [("ww", -alpha * beta * q ** 5 * (1 + q ** 2))],
            "V": [("vw", alpha * beta * q ** 2 * (1 + q ** 4 - q ** 6))],
            "W": [("uw", alpha * beta * q ** 6 * (q + q ** -1)),
                  ("vv", -alpha * beta * q ** 6), ("", 2 * beta)]}),
        ("W", "U"): t({
            "U": [("vw", alpha * beta * q ** 6)],
            "V": [("uw", alpha * beta * q ** 4 * (1 - q ** 2)),
                  ("vv", -alpha * beta * q ** 4 * (1 - q ** 2) * two),
                  ("", -2 * beta / (1 + q ** 2))],
            "W": [("uv", -alpha * beta * q ** 6)]}),
        ("U", "W"): t({
            "U": [("vw", alpha * beta * q ** 2)],
            "V": [("uw", -alpha * beta * (q ** 2 - 1)),
                  ("vv", alpha * beta * (q ** 2 - 1) * two),
                  ("", 2 * beta * q / (1 + q ** 2))],
            "W": [("uv", -alpha * beta * q ** 2)]}),
        ("V", "V"): t({
            "U": [("vw", -alpha * beta * q ** 3 * (1 + q ** 2) ** 2)],
            "V": [("uw", -beta * q * (1 + q ** 2) * (1 - q ** 4)),
                  ("vv", beta * q * (1 + q ** 2) * (1 - q ** 4) * two),
                  ("", 2 * beta * (1 - q ** 2))],
            "W": [("uv", alpha * q ** 3 * (1 + q ** 2) ** 2)]}),
    }


def connection_table_comparison(params: Params, table: ConnectionTable) -> list:
    printed = connection_printed(params)
    results = []
    for s, t in PAIRS:
        derived = table.entry(s, t)
        stated = printed[(s, t)]
        if (derived - stated).is_zero():
            results.append(((s, t), "agree", ""))
            continue
        reasons = []
        wt = _SYM_WEIGHT[s] + _SYM_WEIGHT[t]
        bad_weight = False
        for sym, coeff in stated.coeffs.items():
            for m in coeff.poly:
                if word_weight(m) + _SYM_WEIGHT[sym] != wt:
                    bad_weight = True
        if bad_weight:
            reasons.append("weight bookkeeping fails")
        results.append(((s, t), "typo-suspect",
                        "; ".join(reasons) or "differs from the derived entry"))
    return results


def torsion_check(params: Params, table: ConnectionTable):
    """The three spin-1 combinations against the bracket images; returns
    (ok, common scalar, details)."""
    checks = connection_checks(params, table)
    torsion = [c for c in checks if c[0].startswith("torsion")]
    ok = all(c[1] for c in torsion)
    return ok, torsion


def _tangent_ratio(a: TangentElement, b: TangentElement):
    """Scalar s with a = s b, for nonzero proportional tangent elements."""
    ca, cb = a.coords(), b.coords()
    if set(ca) != set(cb) or not cb:
        return None
    key = sorted(cb)[0]
    ratio = ca[key] / cb[key]
    for k2, val in cb.items():
        if ca[k2] != ratio * val:
            return None
    return ratio
