"""Independent classical oracle: the commutative hyperboloid at q = 1.

A deliberately separate implementation (plain commutative monomials over
exact rationals, Leibniz rule) used to cross-check the engine's q = 1
specializations. Monomials are exponent triples (i, j, k) for u^i v^j w^k
with the relation 4 u w + v^2 = c eliminating mixed u/w powers.
"""

from __future__ import annotations

from fractions import Fraction


class ClassicalAlgebra:
    """Polynomial functions on the classical hyperboloid 4uw + v^2 = c."""

    def __init__(self, c: Fraction):
        self.c = Fraction(c)
        if not self.c:
            raise ValueError("c must be nonzero")

    def reduce(self, poly: dict) -> dict:
        """Eliminate uw pairs: uw = c/4 - v^2/4."""
        out: dict = {}
        pending = list(poly.items())
        while pending:
            (i, j, k), coef = pending.pop()
            if not coef:
                continue
            if i > 0 and k > 0:
                pending.append(((i - 1, j, k - 1), coef * self.c / 4))
                pending.append(((i - 1, j + 2, k - 1), -coef / 4))
            else:
                key = (i, j, k)
                val = out.get(key, Fraction(0)) + coef
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        prod: dict = {}
        for (i1, j1, k1), c1 in a.items():
            for (i2, j2, k2), c2 in b.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                prod[key] = prod.get(key, Fraction(0)) + c1 * c2
        return self.reduce(prod)

    @staticmethod
    def from_word(word: str) -> dict:
        return {(word.count("u"), word.count("v"), word.count("w")): Fraction(1)}


# the classical adjoint fields (tau = 4, so M = 2): images of the generators
_DEGREE_ONE = {
    "U": {"u": {}, "v": {(1, 0, 0): Fraction(-2)}, "w": {(0, 1, 0): Fraction(1)}},
    "V": {"u": {(1, 0, 0): Fraction(2)}, "v": {}, "w": {(0, 0, 1): Fraction(-2)}},
    "W": {"u": {(0, 1, 0): Fraction(-1)}, "v": {(0, 0, 1): Fraction(2)}, "w": {}},
}


class ClassicalVectorField:
    """The hyperbolic rotation fields extended by the Leibniz rule."""

    def __init__(self, algebra: ClassicalAlgebra, sym: str):
        self.algebra = algebra
        self.table = _DEGREE_ONE[sym]

    def apply(self, poly: dict) -> dict:
        out: dict = {}
        for (i, j, k), coef in poly.items():
            for letter, exp in (("u", i), ("v", j), ("w", k)):
                if not exp:
                    continue
                lowered = {
                    "u": (i - 1, j, k), "v": (i, j - 1, k), "w": (i, j, k - 1),
                }[letter]
                for mono, val in self.table[letter].items():
                    key = (mono[0] + lowered[0], mono[1] + lowered[1],
                           mono[2] + lowered[2])
                    out[key] = out.get(key, Fraction(0)) + coef * exp * val
        return self.algebra.reduce(out)


def classical_field_apply(c: Fraction, sym: str, word: str) -> dict:
    """Leibniz-extended field applied to a monomial word, reduced."""
    algebra = ClassicalAlgebra(c)
    field = ClassicalVectorField(algebra, sym)
    return field.apply(algebra.reduce(ClassicalAlgebra.from_word(word)))


def classical_bracket_table() -> dict:
    """The sl(2) commutation table with the normalization M = 2."""
    return {
        "uu": {}, "uv": {"u": Fraction(-2)}, "uw": {"v": Fraction(1)},
        "vu": {"u": Fraction(2)}, "vv": {}, "vw": {"w": Fraction(-2)},
        "wu": {"v": Fraction(-1)}, "wv": {"w": Fraction(2)}, "ww": {},
    }
