"""Expression language for the command line.

Grammar (explicit ``*`` everywhere, no implicit multiplication):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' nonneg-integer]
    atom   := integer | 'q' | 'c' | 'u' | 'v' | 'w'
            | 'U' | 'V' | 'W' | "U'" | "V'" | "W'" | '(' expr ')'

Division is only defined by scalar values. A term carries at most one
field symbol; unprimed symbols build left tangent elements (the symbol
must be rightmost among the non-scalar factors), primed symbols build
right ones (symbol leftmost). An expression is either pure algebra or
pure tangent of a single side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qrat import Params, Scalar
from .algebra import AlgebraElement, FUNCTION
from .tangent import LEFT, RIGHT, TangentElement


class ExprError(ValueError):
    """Syntax or placement error, annotated with the source position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass
class Token:
    kind: str  # num, name, prime, op, end
    text: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], i))
            i = j
        elif ch in "quvwcUVW":
            name = ch
            if ch in "UVW" and i + 1 < len(text) and text[i + 1] == "'":
                name += "'"
                i += 1
            tokens.append(Token("name", name, i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append(Token("op", ch, i))
            i += 1
        else:
            raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST ------------------------------------------------------------------------

@dataclass
class Num:
    value: int
    pos: int


@dataclass
class Name:
    name: str
    pos: int


@dataclass
class Pow:
    base: object
    exponent: int
    pos: int


@dataclass
class Product:
    factors: list  # (node, is_division)
    pos: int


@dataclass
class Sum:
    terms: list  # (node, sign)
    pos: int


class Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def eat(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self):
        pos = self.peek().pos
        terms = []
        sign = 1
        while self.peek().text in ("+", "-"):
            if self.eat().text == "-":
                sign = -sign
        terms.append((self.term(), sign))
        while self.peek().text in ("+", "-"):
            op = self.eat().text
            sign = 1 if op == "+" else -1
            while self.peek().text in ("+", "-"):
                if self.eat().text == "-":
                    sign = -sign
            terms.append((self.term(), sign))
        return Sum(terms, pos)

    def term(self):
        pos = self.peek().pos
        factors = [(self.factor(), False)]
        while self.peek().text in ("*", "/"):
            op = self.eat().text
            factors.append((self.factor(), op == "/"))
        return Product(factors, pos)

    def factor(self):
        node = self.atom()
        if self.peek().text == "^":
            caret = self.eat()
            tok = self.peek()
            if tok.kind != "num":
                raise ExprError("expected a nonnegative integer exponent", tok.pos)
            self.eat()
            node = Pow(node, int(tok.text), caret.pos)
        return node

    def atom(self):
        tok = self.eat()
        if tok.kind == "num":
            return Num(int(tok.text), tok.pos)
        if tok.kind == "name":
            return Name(tok.text, tok.pos)
        if tok.text == "(":
            node = self.expr()
            closing = self.eat()
            if closing.text != ")":
                raise ExprError("expected ')'", closing.pos)
            return node
        if tok.text == "-":
            inner = self.factor()
            return Sum([(Product([(inner, False)], tok.pos), -1)], tok.pos)
        raise ExprError(f"expected a value, found {tok.text or 'end of input'!r}",
                        tok.pos)


def parse_expression(text: str):
    """Parse to the AST; evaluation is a separate step."""
    return Parser(text).parse()


# evaluation -------------------------------------------------------------------

SCALAR, ALGEBRA, TANGENT_LEFT, TANGENT_RIGHT = "scalar", "algebra", "left", "right"


class Value:
    """A tagged evaluation result."""

    def __init__(self, kind: str, data, pos: int):
        self.kind = kind
        self.data = data
        self.pos = pos

    def as_algebra(self, params: Params) -> AlgebraElement:
        if self.kind == SCALAR:
            return AlgebraElement.scalar(params, self.data)
        if self.kind == ALGEBRA:
            return self.data
        raise ExprError("expected an algebra-valued expression", self.pos)

    def as_tangent(self, params: Params, side: str) -> TangentElement:
        if self.kind == (TANGENT_LEFT if side == LEFT else TANGENT_RIGHT):
            return self.data
        raise ExprError(f"expected a {side} tangent expression", self.pos)


def evaluate(node, params: Params) -> Value:
    if isinstance(node, Num):
        return Value(SCALAR, params.field.of(node.value), node.pos)
    if isinstance(node, Name):
        return _eval_name(node, params)
    if isinstance(node, Pow):
        base = evaluate(node.base, params)
        if base.kind == SCALAR:
            return Value(SCALAR, base.data ** node.exponent, node.pos)
        if base.kind == ALGEBRA:
            out = AlgebraElement.one(params)
            for _ in range(node.exponent):
                out = out * base.data
            return Value(ALGEBRA, out, node.pos)
        raise ExprError("exponents apply to scalars and algebra values", node.pos)
    if isinstance(node, Product):
        return _eval_product(node, params)
    if isinstance(node, Sum):
        return _eval_sum(node, params)
    raise ExprError("malformed expression", 0)


def _eval_name(node: Name, params: Params) -> Value:
    name = node.name
    if name == "q":
        return Value(SCALAR, params.field.q, node.pos)
    if name == "c":
        return Value(SCALAR, params.c, node.pos)
    if name in "uvw":
        return Value(ALGEBRA, AlgebraElement.generator(params, name), node.pos)
    if name in ("U", "V", "W"):
        return Value(TANGENT_LEFT,
                     TangentElement.symbol(params, name, LEFT), node.pos)
    return Value(TANGENT_RIGHT,
                 TangentElement.symbol(params, name[0], RIGHT), node.pos)


def _eval_product(node: Product, params: Params) -> Value:
    scalar = params.field.one
    algebra_before = None  # coefficient words seen before a symbol
    algebra_after = None
    symbol_value = None  # Value of kind TANGENT_*
    for factor, is_div in node.factors:
        val = evaluate(factor, params)
        if is_div:
            if val.kind != SCALAR:
                raise ExprError("division is only defined by scalars", val.pos)
            if not val.data:
                raise ExprError("division by zero", val.pos)
            scalar = scalar / val.data
            continue
        if val.kind == SCALAR:
            scalar = scalar * val.data
        elif val.kind == ALGEBRA:
            if symbol_value is None:
                algebra_before = val.data if algebra_before is None \
                    else algebra_before * val.data
            else:
                algebra_after = val.data if algebra_after is None \
                    else algebra_after * val.data
        else:
            if symbol_value is not None:
                raise ExprError("a term may contain at most one field symbol",
                                val.pos)
            symbol_value = val
    if symbol_value is None:
        if algebra_before is None:
            return Value(SCALAR, scalar, node.pos)
        return Value(ALGEBRA, algebra_before.scale(scalar), node.pos)
    if symbol_value.kind == TANGENT_LEFT:
        if algebra_after is not None:
            raise ExprError("left tangent terms put the field symbol rightmost",
                            node.pos)
        t = symbol_value.data.scale(scalar)
        if algebra_before is not None:
            t = t.module_mul(algebra_before)
        return Value(TANGENT_LEFT, t, node.pos)
    if algebra_before is not None:
        raise ExprError("right tangent terms put the field symbol leftmost",
                        node.pos)
    t = symbol_value.data.scale(scalar)
    if algebra_after is not None:
        t = t.module_mul(algebra_after)
    return Value(TANGENT_RIGHT, t, node.pos)


def _eval_sum(node: Sum, params: Params) -> Value:
    values = []
    for term, sign in node.terms:
        val = evaluate(term, params)
        values.append((val, sign))
    kinds = {v.kind for v, _ in values}
    if kinds <= {SCALAR}:
        total = params.field.zero
        for v, sign in values:
            total = total + v.data if sign > 0 else total - v.data
        return Value(SCALAR, total, node.pos)
    if kinds <= {SCALAR, ALGEBRA}:
        total = AlgebraElement.zero(params)
        for v, sign in values:
            elem = v.as_algebra(params)
            total = total + elem if sign > 0 else total - elem
        return Value(ALGEBRA, total, node.pos)
    if kinds == {TANGENT_LEFT} or kinds == {TANGENT_RIGHT}:
        side = TANGENT_LEFT if TANGENT_LEFT in kinds else TANGENT_RIGHT
        total = None
        for v, sign in values:
            elem = v.data if sign > 0 else v.data.scale(-params.field.one)
            total = elem if total is None else total + elem
        return Value(side, total, node.pos)
    raise ExprError("cannot mix tangent sides or tangent and algebra terms "
                    "in one expression", node.pos)


def evaluate_expression(text: str, params: Params) -> Value:
    return evaluate(parse_expression(text), params)
