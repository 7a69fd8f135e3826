"""The braided Lie bracket on V = span(u, v, w) and the q-Jacobi identity.

The bracket kills the q-symmetric part I_+ = V_0 + V_2 of V (x) V and maps
the three generators of I_- = V_1 to -tau u, tau v, tau w. Its 9-entry
commutation table (with M = tau/(1+q^4)):

    [u,u] = 0            [u,v] = -q^2 M u        [u,w] = M v/(q + 1/q)
    [v,u] = M u          [v,v] = (1 - q^2) M v   [v,w] = -q^2 M w
    [w,u] = -M v/(q+1/q) [w,v] = M w             [w,w] = 0
"""

from __future__ import annotations

from . import linalg
from .qrat import Params, QRatError
from .uqsl2 import (TensorElement, act_x_raw, act_y_raw, act_qh_raw,
                    weight_of, X, Y, H)
from .algebra import poly_add_into

GENS = "uvw"


class BracketError(ValueError):
    pass


def bracket_table(params: Params) -> dict[str, dict[str, object]]:
    """The 9 values [a,b]_q as letter -> coefficient maps."""
    q = params.field.q
    M = params.M
    inv2 = 1 / (q + q ** -1)
    return {
        "uu": {},
        "uv": {"u": -q ** 2 * M},
        "uw": {"v": inv2 * M},
        "vu": {"u": M},
        "vv": {"v": (1 - q ** 2) * M},
        "vw": {"w": -q ** 2 * M},
        "wu": {"v": -inv2 * M},
        "wv": {"w": M},
        "ww": {},
    }


def bracket(t: TensorElement, params: Params) -> dict:
    """Bilinear extension of the table to a rank-2 tensor; returns a
    letter -> coefficient dict (an element of V)."""
    if t.rank != 2:
        raise BracketError("the bracket takes rank-2 tensors")
    table = bracket_table(params)
    out: dict = {}
    for word, coef in t.data.items():
        for letter, val in table[word].items():
            poly_add_into(out, letter, coef * val)
    return out


def bracket_pair(a: str, b: str, params: Params) -> dict:
    return dict(bracket_table(params)[a + b])


def v_element_bracket(lhs: dict, z: str, params: Params) -> dict:
    """[x, z] extended linearly in x over a letter -> coefficient dict."""
    out: dict = {}
    table = bracket_table(params)
    for letter, coef in lhs.items():
        for res, val in table[letter + z].items():
            poly_add_into(out, res, coef * val)
    return out


# spanning tensors of the invariant subspaces (App. A spans)

def iminus_generators(params: Params) -> list[TensorElement]:
    q = params.field.q
    field = params.field
    one = field.one
    return [
        TensorElement(2, {"uv": q ** 2, "vu": -one}, field),
        TensorElement(2, {"uw": q ** 3 + q, "wu": -(q ** 3 + q), "vv": 1 - q ** 2}, field),
        TensorElement(2, {"vw": -q ** 2, "wv": one}, field),
    ]


def iplus_generators(params: Params) -> list[TensorElement]:
    q = params.field.q
    field = params.field
    one = field.one
    v0 = TensorElement(2, {"uw": q ** 3 + q, "vv": one, "wu": q + q ** -1}, field)
    v2 = [
        TensorElement(2, {"uu": one}, field),
        TensorElement(2, {"uv": one, "vu": q ** 2}, field),
        TensorElement(2, {"uw": one, "vv": -q, "wu": q ** 4}, field),
        TensorElement(2, {"vw": one, "wv": q ** 2}, field),
        TensorElement(2, {"ww": one}, field),
    ]
    return [v0] + v2


def _act_on_v(gen: str, d: dict, params: Params) -> dict:
    field = params.field
    if gen == X:
        return act_x_raw(d, field)
    if gen == Y:
        return act_y_raw(d, field)
    if gen == H:
        out = {}
        for letter, coef in d.items():
            mu = weight_of(letter)
            if mu:
                out[letter] = coef * mu
        return out
    raise BracketError(f"unknown generator {gen!r}")


def equivariance_defect(gen: str, a: str, b: str, params: Params) -> dict:
    """z.[a,b] - [ , ](Delta z (a (x) b)) as a letter dict; zero when covariant."""
    field = params.field
    lhs = _act_on_v(gen, bracket_pair(a, b, params), params)
    pair = TensorElement(2, {a + b: field.one}, field)
    if gen == X:
        acted = act_x_raw(pair.data, field)
    elif gen == Y:
        acted = act_y_raw(pair.data, field)
    else:
        acted = act_h_like(pair.data, field)
    rhs = bracket(TensorElement(2, acted, field), params)
    out = dict(lhs)
    for letter, coef in rhs.items():
        poly_add_into(out, letter, -coef)
    return out


def act_h_like(d: dict, field) -> dict:
    out = {}
    for word, coef in d.items():
        mu = weight_of(word)
        if mu:
            out[word] = coef * mu
    return out


def defining_checks(params: Params) -> list[tuple[str, bool, str]]:
    """Def 3.1: the bracket kills I_+, sends the I_- generators to
    -tau u, tau v, tau w, and is U_q(sl(2))-covariant on all 9 pairs."""
    results = []
    tau = params.tau
    for i, gen in enumerate(iplus_generators(params)):
        img = bracket(gen, params)
        results.append((f"bracket kills I+ generator {i}", not img, _vstr(img)))
    targets = [{"u": -tau}, {"v": tau}, {"w": tau}]
    for i, (gen, want) in enumerate(zip(iminus_generators(params), targets)):
        img = bracket(gen, params)
        diff = dict(img)
        for letter, coef in want.items():
            poly_add_into(diff, letter, -coef)
        results.append((f"bracket on I- generator {i} hits +-tau value",
                        not diff, _vstr(img)))
    for gen in (X, Y, H):
        for a in GENS:
            for b in GENS:
                defect = equivariance_defect(gen, a, b, params)
                results.append((f"bracket equivariance {gen} on [{a},{b}]",
                                not defect, _vstr(defect)))
    return results


def jacobi_check(params: Params) -> list[tuple[str, bool, str]]:
    """The three braided Jacobi relations evaluated on z in {u, v, w}.

    Relation 1: q^2[u,[v,z]] - [v,[u,z]] = kappa [q^2[u,v] - [v,u], z]
    Relation 2: (q^3+q)([u,[w,z]] - [w,[u,z]]) + (1-q^2)[v,[v,z]]
                = kappa [(q^3+q)([u,w]-[w,u]) + (1-q^2)[v,v], z]
    Relation 3: -q^2[v,[w,z]] + [w,[v,z]] = kappa [-q^2[v,w] + [w,v], z]
    """
    q = params.field.q
    kappa = params.kappa

    def br(a: str, z_dict: dict) -> dict:
        out: dict = {}
        table = bracket_table(params)
        for letter, coef in z_dict.items():
            for res, val in table[a + letter].items():
                poly_add_into(out, res, coef * val)
        return out

    def gen_dict(z: str) -> dict:
        return {z: params.field.one}

    relations = []
    for z in GENS:
        zd = gen_dict(z)
        lhs1 = _combine(br("u", br("v", zd)), q ** 2, br("v", br("u", zd)), -1)
        rhs1 = _scale_dict(v_element_bracket(
            _combine(bracket_pair("u", "v", params), q ** 2,
                     bracket_pair("v", "u", params), -1), z, params), kappa)
        relations.append((f"q-Jacobi relation 1 at z={z}", lhs1, rhs1))

        inner = _combine(br("u", br("w", zd)), q ** 3 + q,
                         br("w", br("u", zd)), -(q ** 3 + q))
        lhs2 = _combine(inner, 1, br("v", br("v", zd)), 1 - q ** 2)
        arg2 = _combine(
            _combine(bracket_pair("u", "w", params), q ** 3 + q,
                     bracket_pair("w", "u", params), -(q ** 3 + q)),
            1, bracket_pair("v", "v", params), 1 - q ** 2)
        rhs2 = _scale_dict(v_element_bracket(arg2, z, params), kappa)
        relations.append((f"q-Jacobi relation 2 at z={z}", lhs2, rhs2))

        lhs3 = _combine(br("v", br("w", zd)), -q ** 2, br("w", br("v", zd)), 1)
        arg3 = _combine(bracket_pair("v", "w", params), -q ** 2,
                        bracket_pair("w", "v", params), 1)
        rhs3 = _scale_dict(v_element_bracket(arg3, z, params), kappa)
        relations.append((f"q-Jacobi relation 3 at z={z}", lhs3, rhs3))

    results = []
    for name, lhs, rhs in relations:
        diff = dict(lhs)
        for letter, coef in rhs.items():
            poly_add_into(diff, letter, -coef)
        results.append((name, not diff, f"lhs={_vstr(lhs)} rhs={_vstr(rhs)}"))
    return results


def ansatz_solution_space(params: Params) -> int:
    """Dimension of the space of equivariant maps V (x) V -> V killing I_+.

    Solves the general 27-unknown ansatz against X/Y/H-equivariance and the
    six I_+ annihilation conditions; Remark 3.1 predicts dimension one.
    """
    field = params.field
    words = [a + b for a in GENS for b in GENS]
    unknowns = [(w, letter) for w in words for letter in GENS]
    index = {key: i for i, key in enumerate(unknowns)}
    rows = []

    def empty_row():
        return [field.zero] * len(unknowns)

    # equivariance: z.B(a(x)b) = B(Delta z (a(x)b)) for the 9 pair words
    for gen in (X, Y, H):
        for w in words:
            pair_act = {X: act_x_raw, Y: act_y_raw, H: act_h_like}[gen]({w: field.one}, field)
            # rows indexed by output letter
            for out_letter in GENS:
                row = empty_row()
                # lhs: z acting on B(w) -> sum over source letters
                for src_letter in GENS:
                    img = _act_on_v(gen, {src_letter: field.one}, params)
                    coef = img.get(out_letter)
                    if coef:
                        row[index[(w, src_letter)]] += coef
                # rhs: B applied to the acted tensor
                for w2, coef in pair_act.items():
                    row[index[(w2, out_letter)]] -= coef
                if any(row):
                    rows.append(row)
    # I_+ annihilation
    for gen in iplus_generators(params):
        for out_letter in GENS:
            row = empty_row()
            for w, coef in gen.data.items():
                row[index[(w, out_letter)]] += coef
            if any(row):
                rows.append(row)
    kernel = linalg.nullspace(rows, field.zero, field.one)
    if kernel:
        # confirm each kernel vector is proportional to the actual table
        table = bracket_table(params)
        for vec in kernel:
            ref = None
            for (w, letter), val in zip(unknowns, vec):
                want = table[w].get(letter, field.zero)
                if val and not want:
                    raise BracketError("ansatz solution not proportional to the table")
                if val and want:
                    ratio = val / want
                    if ref is None:
                        ref = ratio
                    elif ratio != ref:
                        raise BracketError("ansatz solution not proportional to the table")
    return len(kernel)


def _combine(d1: dict, s1, d2: dict, s2) -> dict:
    out: dict = {}
    for letter, coef in d1.items():
        poly_add_into(out, letter, coef * s1)
    for letter, coef in d2.items():
        poly_add_into(out, letter, coef * s2)
    return out


def _scale_dict(d: dict, s) -> dict:
    return {k: v * s for k, v in d.items() if v * s}


def _vstr(d: dict) -> str:
    if not d:
        return "0"
    return " + ".join(f"({c})*{k}" for k, c in sorted(d.items()))
