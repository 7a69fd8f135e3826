"""Exact arithmetic in the coefficient field Q(q) and the global parameter record.

A :class:`RatFunc` is a quotient of two polynomials in ``q`` with rational
coefficients, kept in canonical form (numerator and denominator coprime,
denominator monic), so structural equality is mathematical equality.
Laurent inputs (negative powers of ``q``) are cleared into the fraction at
construction time.

Internally a value is stored as ``scale * inum / iden`` with ``scale`` a
``Fraction`` and ``inum``/``iden`` primitive integer polynomials with
positive leading coefficients; this keeps the polynomial arithmetic in
machine integers (the ``num``/``den`` properties expose the monic-
denominator form).

The rest of the engine is generic over the coefficient field: a
:class:`QField` either carries the symbol ``q`` (scalars are ``RatFunc``) or
specializes ``q`` to an exact rational (scalars are ``Fraction``), which lets
every verification suite re-run under a specialization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Union

Scalar = Union["RatFunc", Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer polynomials, dense, low degree first
# ---------------------------------------------------------------------------

def _ptrim(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def _padd_int(a, b, sa: int, sb: int):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = sa * c
    for i, c in enumerate(b):
        out[i] += sb * c
    return _ptrim(out)


def _pmul_int(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ptrim(out)


def _content(cs) -> int:
    g = 0
    for c in cs:
        g = int_gcd(g, c)
    return g


def _primitive(cs):
    """(primitive positive-leading polynomial, integer content with sign)."""
    cs = _ptrim(list(cs))
    if not cs:
        return (), 0
    g = _content(cs)
    if cs[-1] < 0:
        g = -g
    return tuple(c // g for c in cs), g


def _prem_int(a, b):
    """Pseudo-remainder of integer polynomials (a scaled mod b)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [lb * c for c in r]
        for i, cb in enumerate(b):
            r[i + k] -= lr * cb
        while r and not r[-1]:
            r.pop()
    return r


def _pgcd_int(a, b):
    """Primitive gcd of integer polynomials, by a primitive PRS."""
    a, _ = _primitive(a)
    b, _ = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r, _ = _primitive(_prem_int(a, b))
        a, b = b, r
    return a


def _pdiv_exact_int(a, b):
    """Exact quotient a / b for integer polynomials with b | a."""
    if not a:
        return ()
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        top = rem[k + len(b) - 1]
        if top % lb:
            raise ArithmeticError("inexact polynomial division")
        c = top // lb
        out[k] = c
        if c:
            for i, cb in enumerate(b):
                rem[k + i] -= c * cb
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _ptrim(out)


def _peval_int(a, x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr_int(a) -> str:
    if not a:
        return "0"
    parts = []
    for exp in range(len(a) - 1, -1, -1):
        c = a[exp]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            var = "q" if exp == 1 else f"q^{exp}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append((sign, body))
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class QRatError(ValueError):
    """Raised for invalid field operations (zero denominators, poles)."""


class RatFunc:
    """A rational function of ``q``; canonical form is coprime numerator and
    denominator with the denominator monic."""

    __slots__ = ("scale", "inum", "iden", "_hash")

    def __init__(self, num=(), den=(_ONE,), _raw=None):
        if _raw is not None:
            self.scale, self.inum, self.iden = _raw
        else:
            nnum, nden = _to_int_pair(num), _to_int_pair(den)
            self.scale, self.inum, self.iden = _canonicalize(
                nnum[0], nden[0], nnum[1] / nden[1])
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(value) -> "RatFunc":
        """Constant rational function from an int or Fraction."""
        f = Fraction(value)
        if not f:
            return RatFunc(_raw=(_ZERO, (), (1,)))
        return RatFunc(_raw=(f, (1,), (1,)))

    @staticmethod
    def gen() -> "RatFunc":
        """The indeterminate ``q``."""
        return RatFunc(_raw=(_ONE, (0, 1), (1,)))

    @staticmethod
    def from_terms(terms: dict) -> "RatFunc":
        """Build from exponent -> coefficient, Laurent exponents allowed."""
        if not terms:
            return RatFunc.of(0)
        shift = min(min(terms), 0)
        num = [_ZERO] * (max(terms) - shift + 1)
        for exp, c in terms.items():
            num[exp - shift] += Fraction(c)
        den = [_ZERO] * (-shift) + [_ONE]
        return RatFunc(num, den)

    # -- canonical (monic denominator) view ----------------------------------

    @property
    def num(self) -> tuple:
        """Numerator coefficients in the monic-denominator form."""
        lead = Fraction(self.iden[-1])
        return tuple(self.scale * lead * c for c in self.inum)

    @property
    def den(self) -> tuple:
        """Monic denominator coefficients."""
        lead = Fraction(self.iden[-1])
        return tuple(Fraction(c) / lead for c in self.iden)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.scale

    def __bool__(self) -> bool:
        return bool(self.scale)

    # -- field operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.of(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.scale:
            return self
        if not self.scale:
            return o
        if self.iden == o.iden:
            p1, q1 = self.scale.numerator, self.scale.denominator
            p2, q2 = o.scale.numerator, o.scale.denominator
            num = _padd_int(self.inum, o.inum, p1 * q2, p2 * q1)
            return RatFunc(_raw=_canonicalize(
                num, self.iden, Fraction(1, q1 * q2)))
        p1, q1 = self.scale.numerator, self.scale.denominator
        p2, q2 = o.scale.numerator, o.scale.denominator
        num = _padd_int(_pmul_int(self.inum, o.iden),
                        _pmul_int(o.inum, self.iden), p1 * q2, p2 * q1)
        den = _pmul_int(self.iden, o.iden)
        return RatFunc(_raw=_canonicalize(num, den, Fraction(1, q1 * q2)))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_raw=(-self.scale, self.inum, self.iden))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.scale or not o.scale:
            return RatFunc(_raw=(_ZERO, (), (1,)))
        n1, d2 = _cancel_int(self.inum, o.iden)
        n2, d1 = _cancel_int(o.inum, self.iden)
        return RatFunc(_raw=(self.scale * o.scale,
                             _pmul_int(n1, n2), _pmul_int(d1, d2)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.scale:
            raise QRatError("division by zero in Q(q)")
        inv_sign = 1 if o.inum[-1] > 0 else -1
        inv = RatFunc(_raw=(inv_sign / o.scale,
                            tuple(inv_sign * c for c in o.iden),
                            tuple(inv_sign * c for c in o.inum)))
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n == 0:
            return RatFunc.of(1)
        if n < 0:
            if not self.scale:
                raise QRatError("division by zero in Q(q)")
            sign = 1 if self.inum[-1] > 0 else -1
            base = RatFunc(_raw=(sign / self.scale,
                                 tuple(sign * c for c in self.iden),
                                 tuple(sign * c for c in self.inum)))
            n = -n
        else:
            base = self
        out = RatFunc.of(1)
        acc = base
        while n:
            if n & 1:
                out = out * acc
            n >>= 1
            if n:
                acc = acc * acc
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.scale == o.scale and self.inum == o.inum
                and self.iden == o.iden)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.scale, self.inum, self.iden))
        return self._hash

    # -- presentation --------------------------------------------------------

    def __str__(self):
        if not self.scale:
            return "0"
        p, qd = self.scale.numerator, self.scale.denominator
        num = tuple(p * c for c in self.inum)
        den = tuple(qd * c for c in self.iden)
        g = int_gcd(_content(num), _content(den))
        num = tuple(c // g for c in num)
        den = tuple(c // g for c in den)
        ns = _pstr_int(num)
        if den == (1,):
            return ns
        ds = _pstr_int(den)
        if sum(1 for c in num if c) > 1:
            ns = f"({ns})"
        # the denominator must re-parse as one factor
        nterms = sum(1 for c in den if c)
        atomic = nterms == 1 and (len(den) == 1 or den[-1] == 1)
        if not atomic:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({self})"


def _to_int_pair(coeffs) -> tuple:
    """Fraction/int coefficient sequence -> (int polynomial, Fraction scale)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        return (), _ONE
    mult = 1
    for c in cs:
        mult = mult * c.denominator // int_gcd(mult, c.denominator)
    ints = [int(c * mult) for c in cs]
    prim, content = _primitive(ints)
    return prim, Fraction(content, mult)


def _canonicalize(inum, iden, scale: Fraction):
    inum = _ptrim(list(inum))
    iden = _ptrim(list(iden))
    if not iden:
        raise QRatError("division by zero in Q(q)")
    if not inum or not scale:
        return _ZERO, (), (1,)
    nprim, ncont = _primitive(inum)
    dprim, dcont = _primitive(iden)
    scale = scale * Fraction(ncont, dcont)
    g = _pgcd_int(nprim, dprim)
    if len(g) > 1:
        nprim = _pdiv_exact_int(nprim, g)
        dprim = _pdiv_exact_int(dprim, g)
        nprim, s1 = _primitive(nprim)
        dprim, s2 = _primitive(dprim)
        scale = scale * Fraction(s1, s2)
    return scale, nprim, dprim


def _cancel_int(a, b):
    """Divide out the primitive gcd of two primitive integer polynomials."""
    if len(a) <= 1 or len(b) <= 1:
        return a, b
    g = _pgcd_int(a, b)
    if len(g) <= 1:
        return a, b
    return _pdiv_exact_int(a, g), _pdiv_exact_int(b, g)


def evaluate_at(f: Scalar, q0) -> Fraction:
    """Substitute ``q = q0`` (an exact rational, nonzero) into ``f``.

    Raises :class:`QRatError` when ``q0`` is a pole, naming the offending
    factor of the denominator.
    """
    q0 = Fraction(q0)
    if q0 == 0:
        raise QRatError("q = 0 is excluded (Laurent exponents)")
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    dval = _peval_int(f.iden, q0)
    if dval == 0:
        factor = f"q - {q0}" if q0 >= 0 else f"q + {-q0}"
        raise QRatError(f"pole at q = {q0}: denominator vanishes on factor ({factor})")
    return f.scale * _peval_int(f.inum, q0) / dval


def parse_ratfunc(text: str) -> RatFunc:
    """Parse the textual form: integer literals, ``q``, ``+ - * / ^``, parens."""
    parser = _RatParser(text)
    value = parser.expr()
    parser.expect_end()
    return value


class _RatParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg):
        raise QRatError(f"{msg} at position {self.pos} in {self.text!r}")

    def expect_end(self):
        if self.peek():
            self.error("trailing input")

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        value = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
        elif ch == "q":
            self.pos += 1
            value = RatFunc.gen()
        elif ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            value = RatFunc.of(int(self.text[start:self.pos]))
        elif ch == "-":
            self.pos += 1
            return -self.factor()
        else:
            self.error("expected a factor")
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            if not self.peek().isdigit():
                self.error("expected an integer exponent")
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            n = int(self.text[start:self.pos])
            value = value ** (-n if neg else n)
        return value


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

class QField:
    """The coefficient field: Q(q) when symbolic, Q when q is specialized.

    ``allow_classical`` permits q = 1 (used only by the classical rank
    oracles; spin machinery needs generic q and will reject it).
    """

    def __init__(self, q=None, allow_classical: bool = False):
        if q is None:
            self.symbolic = True
            self.q: Scalar = RatFunc.gen()
            self.zero: Scalar = RatFunc.of(0)
            self.one: Scalar = RatFunc.of(1)
        else:
            q = Fraction(q)
            if q == 0:
                raise QRatError("q = 0 is excluded")
            if abs(q) == 1 and not allow_classical:
                raise QRatError("q = +-1 is not generic; use a symbolic field "
                                "and evaluate_at for classical limits")
            self.symbolic = False
            self.q = q
            self.zero = Fraction(0)
            self.one = Fraction(1)
        self._cache: dict = {}

    def of(self, value) -> Scalar:
        if self.symbolic:
            return RatFunc.of(value)
        return Fraction(value)

    def coerce(self, value) -> Scalar:
        if isinstance(value, (int, Fraction)) and self.symbolic:
            return RatFunc.of(value)
        if isinstance(value, RatFunc) and not self.symbolic:
            return evaluate_at(value, self.q)
        if self.symbolic and not isinstance(value, RatFunc):
            raise QRatError(f"cannot coerce {value!r} into Q(q)")
        return value

    def qpow(self, n: int) -> Scalar:
        key = ("qpow", n)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self.q ** n
        return hit

    def is_generic(self) -> bool:
        return self.symbolic or abs(self.q) != 1

    def describe(self) -> str:
        return "symbolic" if self.symbolic else str(self.q)

    def __eq__(self, other):
        return isinstance(other, QField) and self.symbolic == other.symbolic \
            and (self.symbolic or self.q == other.q)

    def __hash__(self):
        return hash(("QField", None if self.symbolic else self.q))

    def __repr__(self):
        return f"QField({self.describe()})"


def q_integer(field: QField, i: int) -> Scalar:
    """The q-integer [i]_q = (q^i - q^-i)/(q - q^-1), for i >= 1."""
    if i < 1:
        raise QRatError(f"q_integer expects i >= 1, got {i}")
    q = field.q
    return (q ** i - q ** (-i)) / (q - q ** (-1))


class ParamsError(ValueError):
    """Invalid parameter combination (zero orbit constant, bad hbar, ...)."""


class Params:
    """Global parameters: the field, orbit constant c, bracket normalization tau,
    and the enveloping-algebra parameter hbar, plus the derived scalars
    M = tau/(1 + q^4) and kappa = 1 - 1/(q^2 + q^-2).
    """

    __slots__ = ("field", "c", "tau", "hbar", "M", "kappa", "_nf_cache", "_key")

    def __init__(self, field: QField | None = None, c=1, tau=4, hbar=0,
                 check_hbar: bool = True):
        self.field = field if field is not None else QField()
        self.c = self.field.coerce(self.field.of(c) if isinstance(c, (int, Fraction)) else c)
        self.tau = self.field.coerce(self.field.of(tau) if isinstance(tau, (int, Fraction)) else tau)
        self.hbar = self.field.coerce(self.field.of(hbar) if isinstance(hbar, (int, Fraction)) else hbar)
        if not self.c:
            raise ParamsError("c = 0 describes the cone, not the hyperboloid; c must be nonzero")
        if not self.tau:
            raise ParamsError("tau must be a nonzero constant")
        q = self.field.q
        self.M = self.tau / (1 + q ** 4)
        self.kappa = 1 - 1 / (q ** 2 + q ** (-2))
        if check_hbar and self.hbar and self.hbar != self.kappa * self.tau / 2:
            raise ParamsError("nonzero hbar must equal kappa*tau/2 for the "
                              "enveloping algebra (pass check_hbar=False to override)")
        self._nf_cache: dict = {}
        self._key = (self.field, self.c, self.tau, self.hbar)

    def with_hbar_enveloping(self) -> "Params":
        """Copy of these parameters with hbar = kappa*tau/2."""
        return Params(self.field, self.c, self.tau, self.kappa * self.tau / 2)

    def with_hbar_zero(self) -> "Params":
        if not self.hbar:
            return self
        return Params(self.field, self.c, self.tau, 0)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Params) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"Params(q={self.field.describe()}, c={self.c}, "
                f"tau={self.tau}, hbar={self.hbar})")
