"""Noncommutative polynomials in u, v, w and their normal forms.

Two quotients of the free algebra are supported, selected by a tag:

* ``ENVELOPING``: the three quadratic relations only (PBW basis
  ``u^i v^j w^k``),
* ``FUNCTION``: additionally the braided Casimir is set to the orbit
  constant c, which eliminates ``uw`` (basis ``u^i v^j`` and ``v^j w^k``).

Rewriting is oriented toward the order u < v < w:

    R1: vu -> q^2 uv + 2 hbar u
    R2: wv -> q^2 vw + 2 hbar w
    R3: wu -> uw + (1-q^2)/(q^3+q) vv - 2 hbar/(q^3+q) v
    R4 (FUNCTION only):
        uw -> q/(1+q^2)^2 c - 1/(q(1+q^2)^2) vv + 2 hbar/(q(1+q^2)^2) v

R1-R3 strictly drop the inversion count, R4 drops the number of u/w
letters, so reduction terminates; confluence is exercised by the
randomized-order checks in the verification suite.

R4 generalizes to separated pairs: commuting w leftward past the v-block
gives the closed form

    u v^j w = q^(-2j) * E * (v - 2 hbar)^j,   E = the R4 image of uw,

(a polynomial in v), which is what the reducer applies when it meets a
``u v^j w`` segment.
"""

from __future__ import annotations

import itertools
from math import comb

from .qrat import Params, Scalar

ENVELOPING = "enveloping"
FUNCTION = "function"

GENERATORS = "uvw"
WEIGHT = {"u": 2, "v": 0, "w": -2}


class AlgebraError(ValueError):
    pass


def word_weight(word: str) -> int:
    return sum(WEIGHT[ch] for ch in word)


# ---------------------------------------------------------------------------
# raw polynomial helpers: dict[word] -> scalar, zero coefficients never stored
# ---------------------------------------------------------------------------

def poly_add_into(acc: dict, word: str, coef) -> None:
    cur = acc.get(word)
    if cur is None:
        if coef:
            acc[word] = coef
        return
    cur = cur + coef
    if cur:
        acc[word] = cur
    else:
        del acc[word]


def poly_combine(acc: dict, other: dict, scale=None) -> None:
    if scale is None:
        for word, coef in other.items():
            poly_add_into(acc, word, coef)
    elif scale:
        for word, coef in other.items():
            poly_add_into(acc, word, coef * scale)


def poly_scale(d: dict, s) -> dict:
    if not s:
        return {}
    return {w: c * s for w, c in d.items()}


def _rules(params: Params, tag: str):
    q = params.field.q
    h = params.hbar
    one = params.field.one
    two_h = 2 * h
    q2 = q * q
    inv_q3q = 1 / (q ** 3 + q)
    rules = {
        "vu": (("uv", q2), ("u", two_h)),
        "wv": (("vw", q2), ("w", two_h)),
        "wu": (("uw", one), ("vv", (1 - q2) * inv_q3q), ("v", -two_h * inv_q3q)),
    }
    return {pair: tuple((w, c) for w, c in repl if c) for pair, repl in rules.items()}


def _rule_table(params: Params, tag: str):
    cache = params._nf_cache
    key = ("rules", tag)
    if key not in cache:
        cache[key] = _rules(params, tag)
    return cache[key]


def _segment_rule(params: Params, j: int):
    """Replacement for a ``u v^j w`` segment under the Casimir elimination:
    a list of (word, coefficient) with words pure powers of v."""
    cache = params._nf_cache
    key = ("segment", j)
    hit = cache.get(key)
    if hit is not None:
        return hit
    q = params.field.q
    h = params.hbar
    s = 1 / (q * (1 + q ** 2) ** 2)
    base = {0: q ** 2 * s * params.c, 1: 2 * h * s, 2: -s}  # image of uw
    # (v - 2*hbar)^j, exponent -> coefficient
    binom = {0: params.field.one}
    for _ in range(j):
        nxt: dict = {}
        for m, c in binom.items():
            nxt[m + 1] = nxt.get(m + 1, params.field.zero) + c
            if h:
                nxt[m] = nxt.get(m, params.field.zero) - 2 * h * c
        binom = {m: c for m, c in nxt.items() if c}
    scale = q ** (-2 * j)
    out: dict = {}
    for e, ce in base.items():
        if not ce:
            continue
        for m, cm in binom.items():
            poly_add_into(out, "v" * (e + m), ce * cm * scale)
    result = tuple(out.items())
    cache[key] = result
    return result


def _find_site(word: str, rules, function_tag: bool):
    """Leftmost reducible site: (start, end, replacement list)."""
    n = len(word)
    for i in range(n - 1):
        pair = word[i : i + 2]
        if pair in rules:
            return i, i + 2, rules[pair]
        if function_tag and word[i] == "u":
            j = i + 1
            while j < n and word[j] == "v":
                j += 1
            if j < n and word[j] == "w":
                return i, j + 1, None  # segment site, length j - i - 1 of v's
    return None


def reduce_word(word: str, params: Params, tag: str) -> dict:
    """Normal form of a single word as a word -> scalar dict (memoized)."""
    cache = params._nf_cache
    key = (tag, word)
    hit = cache.get(key)
    if hit is not None:
        return hit
    rules = _rule_table(params, tag)
    site = _find_site(word, rules, tag == FUNCTION)
    if site is None:
        result = {word: params.field.one}
    else:
        start, end, repl = site
        if repl is None:
            repl = _segment_rule(params, end - start - 2)
        prefix, suffix = word[:start], word[end:]
        result: dict = {}
        for body, coef in repl:
            sub = reduce_word(prefix + body + suffix, params, tag)
            poly_combine(result, sub, coef)
    cache[key] = result
    return result


def reduce_poly(poly: dict, params: Params, tag: str) -> dict:
    out: dict = {}
    for word, coef in poly.items():
        poly_combine(out, reduce_word(word, params, tag), coef)
    return out


def reduce_word_random(word: str, params: Params, tag: str, rng) -> dict:
    """Normal form computed with a random reduction order (confluence probe)."""
    rules = _rule_table(params, tag)
    function_tag = tag == FUNCTION
    pending = [(word, params.field.one)]
    out: dict = {}
    while pending:
        cur, coef = pending.pop()
        sites = []
        n = len(cur)
        for i in range(n - 1):
            pair = cur[i : i + 2]
            if pair in rules:
                sites.append((i, i + 2, rules[pair]))
            if function_tag and cur[i] == "u":
                j = i + 1
                while j < n and cur[j] == "v":
                    j += 1
                if j < n and cur[j] == "w":
                    sites.append((i, j + 1, None))
        if not sites:
            poly_add_into(out, cur, coef)
            continue
        start, end, repl = sites[rng.randrange(len(sites))]
        if repl is None:
            repl = _segment_rule(params, end - start - 2)
        for body, factor in repl:
            pending.append((cur[:start] + body + cur[end:], coef * factor))
    return out


def is_normal_word(word: str, tag: str) -> bool:
    sorted_ok = all(a <= b for a, b in zip(word, word[1:]))
    if tag == ENVELOPING:
        return sorted_ok
    return sorted_ok and not ("u" in word and "w" in word)


def basis_enumerate(n: int, tag: str) -> list[str]:
    """Normal-form words of filtration degree <= n, in (degree, lex) order."""
    if n < 0:
        raise AlgebraError("degree bound must be >= 0")
    words = []
    if tag == ENVELOPING:
        for d in range(n + 1):
            for i in range(d + 1):
                for j in range(d - i + 1):
                    k = d - i - j
                    words.append("u" * i + "v" * j + "w" * k)
    elif tag == FUNCTION:
        for d in range(n + 1):
            for j in range(d + 1):
                words.append("u" * (d - j) + "v" * j)
            for j in range(d):
                words.append("v" * j + "w" * (d - j))
    else:
        raise AlgebraError(f"unknown tag {tag!r}")
    words.sort(key=lambda w: (len(w), w))
    return words


def expected_basis_size(n: int, tag: str) -> int:
    return (n + 1) ** 2 if tag == FUNCTION else comb(n + 3, 3)


def casimir_words(params: Params) -> dict:
    """The braided Casimir (q^3+q) uw + vv + (q+1/q) wu as a raw polynomial."""
    q = params.field.q
    return {"uw": q ** 3 + q, "vv": params.field.one, "wu": q + q ** (-1)}


class AlgebraElement:
    """A normal-form element of U(sl(2)_q) (ENVELOPING) or A^c_{hbar,q} (FUNCTION)."""

    __slots__ = ("poly", "tag", "params")

    def __init__(self, poly: dict, tag: str, params: Params, reduced: bool = False):
        if tag not in (ENVELOPING, FUNCTION):
            raise AlgebraError(f"unknown tag {tag!r}")
        self.tag = tag
        self.params = params
        self.poly = dict(poly) if reduced else reduce_poly(poly, params, tag)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(params: Params, tag: str = FUNCTION) -> "AlgebraElement":
        return AlgebraElement({}, tag, params, reduced=True)

    @staticmethod
    def one(params: Params, tag: str = FUNCTION) -> "AlgebraElement":
        return AlgebraElement({"": params.field.one}, tag, params, reduced=True)

    @staticmethod
    def generator(params: Params, letter: str, tag: str = FUNCTION) -> "AlgebraElement":
        if letter not in GENERATORS:
            raise AlgebraError(f"unknown generator {letter!r}")
        return AlgebraElement({letter: params.field.one}, tag, params, reduced=True)

    @staticmethod
    def from_word(params: Params, word: str, tag: str = FUNCTION) -> "AlgebraElement":
        return AlgebraElement({word: params.field.one}, tag, params)

    @staticmethod
    def scalar(params: Params, value, tag: str = FUNCTION) -> "AlgebraElement":
        value = params.field.coerce(params.field.of(value)
                                    if isinstance(value, int) else value)
        return AlgebraElement({"": value} if value else {}, tag, params, reduced=True)

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return bool(self.poly)

    def degree(self) -> int:
        return max((len(w) for w in self.poly), default=0)

    def _check_compatible(self, other: "AlgebraElement"):
        if self.tag != other.tag:
            raise AlgebraError(f"tag mismatch: {self.tag} vs {other.tag}")
        if self.params.key() != other.params.key():
            raise AlgebraError("parameter mismatch between algebra elements")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.poly)
        poly_combine(out, other.poly)
        return AlgebraElement(out, self.tag, self.params, reduced=True)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.poly)
        poly_combine(out, other.poly, -self.params.field.one)
        return AlgebraElement(out, self.tag, self.params, reduced=True)

    def __neg__(self):
        return self.scale(-self.params.field.one)

    def scale(self, s) -> "AlgebraElement":
        return AlgebraElement(poly_scale(self.poly, s), self.tag, self.params,
                              reduced=True)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check_compatible(other)
            out: dict = {}
            for w1, c1 in self.poly.items():
                for w2, c2 in other.poly.items():
                    poly_combine(out, reduce_word(w1 + w2, self.params, self.tag),
                                 c1 * c2)
            return AlgebraElement(out, self.tag, self.params, reduced=True)
        return self.scale(self.params.field.coerce(
            self.params.field.of(other) if isinstance(other, int) else other))

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return NotImplemented
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.tag == other.tag and self.params.key() == other.params.key()
                and self.poly == other.poly)

    def __hash__(self):
        return hash((self.tag, tuple(sorted(self.poly.items(), key=lambda kv: kv[0]))))

    def weight(self) -> int | None:
        """Common H-weight of all words, or None when mixed (zero has weight 0)."""
        weights = {word_weight(w) for w in self.poly}
        if not weights:
            return 0
        if len(weights) == 1:
            return weights.pop()
        return None

    def weight_components(self) -> dict[int, "AlgebraElement"]:
        comps: dict[int, dict] = {}
        for w, c in self.poly.items():
            comps.setdefault(word_weight(w), {})[w] = c
        return {mu: AlgebraElement(p, self.tag, self.params, reduced=True)
                for mu, p in sorted(comps.items())}

    # -- presentation -----------------------------------------------------------

    def __str__(self):
        if not self.poly:
            return "0"
        parts = []
        for word in sorted(self.poly, key=lambda w: (len(w), w)):
            coef = self.poly[word]
            cs = str(coef)
            if word:
                if cs == "1":
                    body = format_word(word)
                elif cs == "-1":
                    body = "-" + format_word(word)
                else:
                    if "/" in cs or " " in cs:
                        cs = f"({cs})"
                    body = f"{cs}*{format_word(word)}"
            else:
                body = cs if ("/" not in cs and " " not in cs) else f"({cs})"
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self):
        return f"<{self.tag}: {self}>"


def format_word(word: str) -> str:
    if not word:
        return "1"
    out = []
    for letter, group in itertools.groupby(word):
        n = len(list(group))
        out.append(letter if n == 1 else f"{letter}^{n}")
    return "*".join(out)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def normal_form(poly: dict, tag: str, params: Params) -> AlgebraElement:
    return AlgebraElement(poly, tag, params)
