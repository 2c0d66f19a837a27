"""A small expression language for classes on the model spaces.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' intlit)?
    atom   := intlit | ratlit | ident | '(' expr ')'
            | 'exp(' expr ')' | 'integrate(' expr ')' | 'degree(' expr ',' intlit ')'

``a/b`` parses to :class:`Div`; :func:`lower` rewrites it as
``Mul(a, Inverse(b))`` before evaluation. A literal like ``3/2`` written without
spaces is a single rational token.

    >>> from swcalc.spaces import parse_space
    >>> evaluate(parse("integrate(theta^2*x)"), parse_space("Cd(4,3)"))
    Fraction(12, 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .ring import DomainError, GradedElement, SWCalcError, degree_part, exp, inverse, pow_int
from .spaces import AmbientSpace, integrate


class ParseError(SWCalcError):
    """Syntax error with the byte offset and the set of tokens that would have been accepted."""

    def __init__(self, message: str, offset: int, expected: Tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Generator:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Sub:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Mul:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Div:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Inverse:
    arg: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


@dataclass(frozen=True)
class Integrate:
    arg: "Expr"


@dataclass(frozen=True)
class DegreePart:
    arg: "Expr"
    k: int


Expr = Union[RationalLit, Generator, Neg, Add, Sub, Mul, Div, Inverse, Pow, Exp, Integrate, DegreePart]


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<rat>\d+/\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_.]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)

_FUNCS = ("exp", "integrate", "degree")


@dataclass(frozen=True)
class Token:
    kind: str  # rat, int, ident, op, eof
    text: str
    offset: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(src)))
    return tokens


# -- parser ------------------------------------------------------------------

_ATOM_START = ("integer", "rational", "identifier", "(", "-", "exp(", "integrate(", "degree(")


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            self.fail((repr(text),))
        return self.advance()

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "eof" else f"token {t.text!r}"
        raise ParseError(f"unexpected {what}", t.offset, tuple(expected))

    def parse(self) -> Expr:
        if self.tok.kind == "eof":
            self.fail(_ATOM_START)
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail(("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            arg = self.factor()
            if isinstance(arg, RationalLit):
                return RationalLit(-arg.value)
            return Neg(arg)
        node = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            node = Pow(node, self.intlit())
        return node

    def intlit(self) -> int:
        sign = 1
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            sign = -1
        if self.tok.kind != "int":
            self.fail(("integer",))
        return sign * int(self.advance().text)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return RationalLit(Fraction(int(t.text)))
        if t.kind == "rat":
            self.advance()
            num, den = t.text.split("/")
            if int(den) == 0:
                raise ParseError("zero denominator in rational literal", t.offset)
            return RationalLit(Fraction(int(num), int(den)))
        if t.kind == "ident":
            nxt = self.tokens[self.i + 1]
            if t.text in _FUNCS and nxt.kind == "op" and nxt.text == "(":
                self.advance()
                self.advance()
                arg = self.expr()
                if t.text == "degree":
                    self.expect(",")
                    k = self.intlit()
                    self.expect(")")
                    return DegreePart(arg, k)
                self.expect(")")
                return Exp(arg) if t.text == "exp" else Integrate(arg)
            self.advance()
            return Generator(t.text)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(_ATOM_START)


def parse(src: str) -> Expr:
    """Parse ``src`` into an AST; raises :class:`ParseError` with a location."""
    return _Parser(src).parse()


def lower(node: Expr) -> Expr:
    """Desugar ``Div(a, b)`` into ``Mul(a, Inverse(b))`` throughout."""
    if isinstance(node, (RationalLit, Generator)):
        return node
    if isinstance(node, Div):
        return Mul(lower(node.lhs), Inverse(lower(node.rhs)))
    if isinstance(node, (Add, Sub, Mul)):
        return type(node)(lower(node.lhs), lower(node.rhs))
    if isinstance(node, Pow):
        return Pow(lower(node.base), node.exponent)
    if isinstance(node, DegreePart):
        return DegreePart(lower(node.arg), node.k)
    return type(node)(lower(node.arg))


def to_source(node: Expr) -> str:
    """Fully parenthesized source text; ``parse(to_source(t)) == t``."""
    if isinstance(node, RationalLit):
        v = node.value
        text = str(v.numerator) if v.denominator == 1 else f"{abs(v.numerator)}/{v.denominator}"
        if v < 0:
            return f"(-{text.lstrip('-')})"
        return text
    if isinstance(node, Generator):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.arg)})"
    if isinstance(node, (Add, Sub, Mul, Div)):
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
        return f"({to_source(node.lhs)} {op} {to_source(node.rhs)})"
    if isinstance(node, Inverse):
        return f"(1 / {to_source(node.arg)})"
    if isinstance(node, Pow):
        return f"({to_source(node.base)}^{node.exponent})"
    if isinstance(node, Exp):
        return f"exp({to_source(node.arg)})"
    if isinstance(node, Integrate):
        return f"integrate({to_source(node.arg)})"
    if isinstance(node, DegreePart):
        return f"degree({to_source(node.arg)}, {node.k})"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation --------------------------------------------------------------

Value = Union[GradedElement, Fraction]


def _as_element(v: Value, space: AmbientSpace) -> GradedElement:
    return space.ring.const(v) if isinstance(v, Fraction) else v


def evaluate(ast: Union[Expr, str], space: AmbientSpace) -> Value:
    """Evaluate over ``space``. ``integrate`` yields a Fraction, everything else a class."""
    if isinstance(ast, str):
        ast = parse(ast)
    return _eval(lower(ast), space)


def _eval(node: Expr, space: AmbientSpace) -> Value:
    if isinstance(node, RationalLit):
        return space.ring.const(node.value)
    if isinstance(node, Generator):
        return space.gen(node.name)
    if isinstance(node, Integrate):
        return integrate(_as_element(_eval(node.arg, space), space), space)
    if isinstance(node, (Add, Sub, Mul)):
        lhs, rhs = _eval(node.lhs, space), _eval(node.rhs, space)
        if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
            return {Add: lhs + rhs, Sub: lhs - rhs, Mul: lhs * rhs}[type(node)]
        lhs, rhs = _as_element(lhs, space), _as_element(rhs, space)
        if isinstance(node, Add):
            return lhs + rhs
        if isinstance(node, Sub):
            return lhs - rhs
        return lhs * rhs
    if isinstance(node, Neg):
        return -_eval(node.arg, space)
    if isinstance(node, Inverse):
        arg = _eval(node.arg, space)
        if isinstance(arg, Fraction):
            if arg == 0:
                raise DomainError("division by zero")
            return 1 / arg
        return inverse(arg)
    if isinstance(node, Pow):
        base = _eval(node.base, space)
        if isinstance(base, Fraction):
            if base == 0 and node.exponent < 0:
                raise DomainError("division by zero")
            return base**node.exponent
        return pow_int(base, node.exponent)
    if isinstance(node, Exp):
        return exp(_as_element(_eval(node.arg, space), space))
    if isinstance(node, DegreePart):
        return degree_part(_as_element(_eval(node.arg, space), space), node.k)
    raise TypeError(f"cannot evaluate {node!r}")
