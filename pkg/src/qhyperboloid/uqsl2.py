"""The U_q(sl(2)) action, quantum Casimir, and exact spin decomposition.

Generators X, Y, H act on the letters u, v, w (and on the field symbols
U, V, W, which transform the same way) by

    X: u -> 0,  v -> -(q + 1/q) u,  w -> v
    Y: u -> -v, v -> (q + 1/q) w,   w -> 0
    H: weight scalar (u: +2, v: 0, w: -2)

and extend to words/tensors through the coproduct

    D(X) = X (x) 1 + q^-H (x) X,   D(Y) = 1 (x) Y + Y (x) q^H.

The quantum Casimir C_q = ((q^(H+1)/2 - q^-(H+1)/2)/(q - q^-1))^2 + YX is
applied with the square expanded, so only integer powers of q appear. Spin
components are extracted by Lagrange interpolation in C_q over the distinct
eigenvalues lambda_k.
"""

from __future__ import annotations

from .qrat import Params, QField, QRatError
from .algebra import (AlgebraElement, FUNCTION, poly_add_into, poly_combine,
                      poly_scale)

X, Y, H = "X", "Y", "H"

# letter weights; field symbols carry the same weights as their generators
LETTER_WEIGHT = {"u": 2, "v": 0, "w": -2, "U": 2, "V": 0, "W": -2}


def weight_of(word: str) -> int:
    return sum(LETTER_WEIGHT[ch] for ch in word)


def _x_image(ch: str, field: QField):
    q = field.q
    if ch in ("u", "U"):
        return ()
    if ch == "v":
        return (("u", -(q + q ** -1)),)
    if ch == "V":
        return (("U", -(q + q ** -1)),)
    if ch == "w":
        return (("v", field.one),)
    return (("V", field.one),)


def _y_image(ch: str, field: QField):
    q = field.q
    if ch == "u":
        return (("v", -field.one),)
    if ch == "U":
        return (("V", -field.one),)
    if ch == "v":
        return (("w", q + q ** -1),)
    if ch == "V":
        return (("W", q + q ** -1),)
    return ()


def act_x_raw(d: dict, field: QField) -> dict:
    """X on a word dict via the iterated coproduct (q^-H left of the slot)."""
    out: dict = {}
    for word, coef in d.items():
        prefix_wt = 0
        for i, ch in enumerate(word):
            for letter, fac in _x_image(ch, field):
                poly_add_into(out, word[:i] + letter + word[i + 1 :],
                              coef * fac * field.qpow(-prefix_wt))
            prefix_wt += LETTER_WEIGHT[ch]
    return out


def act_y_raw(d: dict, field: QField) -> dict:
    """Y on a word dict via the iterated coproduct (q^H right of the slot)."""
    out: dict = {}
    for word, coef in d.items():
        total = weight_of(word)
        prefix_wt = 0
        for i, ch in enumerate(word):
            suffix_wt = total - prefix_wt - LETTER_WEIGHT[ch]
            for letter, fac in _y_image(ch, field):
                poly_add_into(out, word[:i] + letter + word[i + 1 :],
                              coef * fac * field.qpow(suffix_wt))
            prefix_wt += LETTER_WEIGHT[ch]
    return out


def act_h_raw(d: dict, field: QField) -> dict:
    out: dict = {}
    for word, coef in d.items():
        mu = weight_of(word)
        if mu:
            out[word] = coef * mu
    return out


def act_qh_raw(d: dict, field: QField, s: int) -> dict:
    """The grouplike q^{sH}."""
    if s == 0:
        return dict(d)
    return {word: coef * field.qpow(s * weight_of(word)) for word, coef in d.items()}


_RAW_ACTIONS = {X: act_x_raw, Y: act_y_raw, H: act_h_raw}


def act_generator(gen: str, elem):
    """Apply a Hopf generator ('X', 'Y', 'H', or ('QH', s)) to an
    AlgebraElement or TensorElement."""
    if isinstance(elem, AlgebraElement):
        field = elem.params.field
        raw = _raw_apply(gen, elem.poly, field)
        return AlgebraElement(raw, elem.tag, elem.params)
    return elem._wrap(_raw_apply(gen, elem.data, elem.field))


def _raw_apply(gen, d: dict, field: QField) -> dict:
    if isinstance(gen, tuple) and gen[0] == "QH":
        return act_qh_raw(d, field, gen[1])
    try:
        return _RAW_ACTIONS[gen](d, field)
    except KeyError:
        raise QRatError(f"unknown Hopf generator {gen!r}") from None


def casimir_scalar(field: QField, mu: int):
    """The expanded square (q^(mu+1) - 2 + q^-(mu+1)) / (q - 1/q)^2."""
    q = field.q
    return (q ** (mu + 1) - 2 + q ** (-mu - 1)) / (q - q ** -1) ** 2


def casimir_eigenvalue(field: QField, k: int):
    """lambda_k = (q^(2k+1) - 2 + q^-(2k+1)) / (q - 1/q)^2, the spin-k value."""
    return casimir_scalar(field, 2 * k)


def casimir_raw(d: dict, field: QField) -> dict:
    out: dict = {}
    for word, coef in d.items():
        s = casimir_scalar(field, weight_of(word))
        if s:
            poly_add_into(out, word, coef * s)
    poly_combine(out, act_y_raw(act_x_raw(d, field), field))
    return out


def casimir_apply(elem):
    """C_q on an AlgebraElement or TensorElement."""
    if isinstance(elem, AlgebraElement):
        return AlgebraElement(casimir_raw(elem.poly, elem.params.field),
                              elem.tag, elem.params)
    return elem._wrap(casimir_raw(elem.data, elem.field))


class TensorElement:
    """An element of V^(x)k with exact coefficients; no relations apply."""

    __slots__ = ("rank", "data", "field")

    def __init__(self, rank: int, data: dict, field: QField):
        self.rank = rank
        self.field = field
        self.data = {w: c for w, c in data.items() if c}
        for w in self.data:
            if len(w) != rank:
                raise QRatError(f"tensor word {w!r} has rank != {rank}")

    @staticmethod
    def basis_word(field: QField, word: str) -> "TensorElement":
        return TensorElement(len(word), {word: field.one}, field)

    def _wrap(self, data: dict) -> "TensorElement":
        return TensorElement(self.rank, data, self.field)

    def is_zero(self) -> bool:
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def __add__(self, other):
        out = dict(self.data)
        poly_combine(out, other.data)
        return self._wrap(out)

    def __sub__(self, other):
        out = dict(self.data)
        poly_combine(out, other.data, -self.field.one)
        return self._wrap(out)

    def scale(self, s) -> "TensorElement":
        return self._wrap(poly_scale(self.data, s))

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.rank == other.rank
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rank, tuple(sorted(self.data.items()))))

    def mu(self, params: Params, tag: str = FUNCTION) -> AlgebraElement:
        """Multiply the slots together in the chosen quotient."""
        return AlgebraElement(dict(self.data), tag, params)

    def weight(self) -> int | None:
        weights = {weight_of(w) for w in self.data}
        if not weights:
            return 0
        return weights.pop() if len(weights) == 1 else None

    def __repr__(self):
        terms = ", ".join(f"{w}: {c}" for w, c in sorted(self.data.items()))
        return f"Tensor[{self.rank}]({terms})"


def tensor_substructure(field: QField, k: int) -> list[TensorElement]:
    """The 2k+1 vectors Y^j . u^(x)k spanning the unique spin-k component
    of V^(x)k (u^(x)k is a highest-weight vector)."""
    if k < 1:
        raise QRatError("tensor_substructure expects k >= 1")
    vec = TensorElement.basis_word(field, "u" * k)
    chain = [vec]
    for _ in range(2 * k):
        vec = vec._wrap(act_y_raw(vec.data, field))
        chain.append(vec)
    return chain


# ---------------------------------------------------------------------------
# spin decomposition by Casimir-Lagrange projectors
# ---------------------------------------------------------------------------

def _lagrange_weights(field: QField, spins: tuple) -> list[list]:
    """Rows of the inverse Vandermonde matrix in the eigenvalues lambda_k:
    component_k = sum_m rows[k][m] C^m(x). Cached per field and spin set."""
    cache = getattr(field, "_cache", None)
    if cache is None:
        cache = field._cache = {}
    key = ("vandermonde", spins)
    if key in cache:
        return cache[key]
    from . import linalg
    lams = [casimir_eigenvalue(field, k) for k in spins]
    n = len(spins)
    aug = [[lams[k] ** m for k in range(n)]
           + [field.one if j == m else field.zero for j in range(n)]
           for m in range(n)]
    rows, pivots = linalg.rref(aug, field.zero, field.one)
    if len(pivots) != n:
        raise QRatError("coincident Casimir eigenvalues; q is not generic")
    inverse = [row[n:] for row in rows]
    result = [[inverse[k][m] for m in range(n)] for k in range(n)]
    cache[key] = result
    return result


def _lagrange_decompose(x, spins, cas, scale, add, is_zero, field):
    spins = tuple(spins)
    weights = _lagrange_weights(field, spins)
    iterates = [x]
    for _ in range(len(spins) - 1):
        iterates.append(cas(iterates[-1]))
    comps = {}
    for idx, k in enumerate(spins):
        comp = None
        for m, it in enumerate(iterates):
            term = scale(it, weights[idx][m])
            comp = term if comp is None else add(comp, term)
        if not is_zero(comp):
            comps[k] = comp
    return comps


def spin_decompose(elem, max_spin: int | None = None) -> dict:
    """Split into Casimir eigencomponents, spin -> component.

    For an AlgebraElement the spin support is bounded by the filtration
    degree; for a TensorElement by the rank.
    """
    if isinstance(elem, AlgebraElement):
        n = elem.degree() if max_spin is None else max_spin
        field = elem.params.field
        return _lagrange_decompose(
            elem, range(n + 1), casimir_apply,
            lambda e, s: e.scale(s), lambda a, b: a + b,
            lambda e: e.is_zero(), field)
    n = elem.rank if max_spin is None else max_spin
    return _lagrange_decompose(
        elem, range(n + 1), casimir_apply,
        lambda e, s: e.scale(s), lambda a, b: a + b,
        lambda e: e.is_zero(), elem.field)


def spin_project(elem, k: int, max_spin: int | None = None):
    """The spin-k component (Lagrange projector P_k applied to elem)."""
    comps = spin_decompose(elem, max_spin)
    if k in comps:
        return comps[k]
    if isinstance(elem, AlgebraElement):
        return AlgebraElement.zero(elem.params, elem.tag)
    return TensorElement(elem.rank, {}, elem.field)


def algebra_highest_weight_vector(params: Params, k: int, degree: int,
                                  tag: str = FUNCTION) -> AlgebraElement:
    """The X-annihilated weight-2k element of the degree <= `degree` part.

    In the multiplicity-free FUNCTION quotient this space is one dimensional
    (the spin-k highest-weight vector); a different kernel dimension is
    reported as an error. Used by the highest-weight cross-check oracle and
    the multiplicity-freeness checks.
    """
    from .linalg import nullspace
    from .algebra import basis_enumerate, word_weight

    field = params.field
    words = [w for w in basis_enumerate(degree, tag) if word_weight(w) == 2 * k]
    if not words:
        raise QRatError(f"no weight-{2 * k} monomials below degree {degree}")
    images = [act_generator(X, AlgebraElement.from_word(params, w, tag))
              for w in words]
    coords = sorted({iw for img in images for iw in img.poly})
    if not coords:
        kernel = [[field.one if i == j else field.zero
                   for j in range(len(words))] for i in range(len(words))]
    else:
        matrix = [[img.poly.get(cw, field.zero) for img in images] for cw in coords]
        kernel = nullspace(matrix, field.zero, field.one)
    if len(kernel) != 1:
        raise QRatError(f"expected a 1-dimensional highest-weight space at "
                        f"spin {k} (degree <= {degree}), found {len(kernel)}")
    poly: dict = {}
    for w, cf in zip(words, kernel[0]):
        if cf:
            poly[w] = cf
    return AlgebraElement(poly, tag, params, reduced=True)
