"""A tiny expression language for coefficient functions phi(n).

Grammar::

    expr    := term (("+"|"-") term)* ;
    term    := factor (("*"|"/") factor)* ;
    factor  := "-" factor | power ;
    power   := atom ("^" power)? ;
    atom    := NUMBER | "n" | "pi" | "e" | IDENT "(" expr ("," expr)? ")" | "(" expr ")" ;

The right operand of ``^`` is never a bare unary minus, so ``2^-n`` is a
syntax error and ``2^(-n)`` is fine. ``^`` chains to the right.
"""
import math
import re
from dataclasses import dataclass
from typing import Tuple, Union

from . import specfun


class ExprSyntaxError(ValueError):
    def __init__(self, message, offset, expected=""):
        self.offset = offset
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownIdentifierError(ExprSyntaxError):
    pass


class Pole(ArithmeticError):
    """Raised when an expression hits a pole of Gamma."""


class EvalDomainError(ArithmeticError):
    """Raised for ln of a non-positive number, division by zero and similar."""


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str = "n"


@dataclass(frozen=True)
class Constant:
    name: str  # "pi" or "e"


@dataclass(frozen=True)
class Unary:
    op: str  # only "-"
    operand: "Ast"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Ast", ...]


Ast = Union[Number, Variable, Constant, Unary, Binary, Call]

FUNCTIONS = {
    "gamma": 1,
    "lgamma": 1,
    "rgamma": 1,
    "exp": 1,
    "ln": 1,
    "sqrt": 1,
    "sin": 1,
    "cos": 1,
    "pow": 2,
}
CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[a-z][a-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, "a token")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, text, pos = self.tok
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"unexpected {found}", pos, repr(value))
        return self.advance()

    def parse(self):
        node = self.expr()
        kind, text, pos = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos, "operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok[1] in ("+", "-") and self.tok[0] == "op":
            op = self.advance()[1]
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok[1] in ("*", "/") and self.tok[0] == "op":
            op = self.advance()[1]
            node = Binary(op, node, self.factor())
        return node

    def factor(self):
        if self.tok == ("op", "-", self.tok[2]):
            self.advance()
            return Unary("-", self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            self.advance()
            return Binary("^", base, self.power())
        return base

    def atom(self):
        kind, text, pos = self.tok
        if kind == "number":
            self.advance()
            return Number(float(text))
        if kind == "ident":
            self.advance()
            if text == "n":
                return Variable("n")
            if text in CONSTANTS:
                return Constant(text)
            if text not in FUNCTIONS:
                raise UnknownIdentifierError(f"unknown identifier {text!r}", pos)
            self.expect("(")
            args = [self.expr()]
            if self.tok[1] == "," and self.tok[0] == "op":
                self.advance()
                args.append(self.expr())
            self.expect(")")
            arity = FUNCTIONS[text]
            if len(args) != arity:
                raise ExprSyntaxError(
                    f"{text} takes {arity} argument(s), got {len(args)}", pos
                )
            return Call(text, tuple(args))
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(
            f"unexpected {found}", pos, "number, 'n', constant, function call or '('"
        )


def parse(text):
    """Parse ``text`` into an Ast."""
    return _Parser(text).parse()


def format_ast(node):
    """Canonical, fully parenthesised text; ``parse(format_ast(a)) == a``."""
    if isinstance(node, Number):
        text = repr(float(node.value))
        # integral values print bare: "1" rather than "1.0"
        return text[:-2] if text.endswith(".0") else text
    if isinstance(node, Variable):
        return "n"
    if isinstance(node, Constant):
        return node.name
    if isinstance(node, Unary):
        return f"(-{format_ast(node.operand)})"
    if isinstance(node, Binary):
        return f"({format_ast(node.left)} {node.op} {format_ast(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({', '.join(format_ast(a) for a in node.args)})"
    raise TypeError(f"not an Ast node: {node!r}")


def _pow(a, b):
    if a == 0.0 and b < 0:
        raise EvalDomainError("zero raised to a negative power")
    if a < 0 and b != math.floor(b):
        raise EvalDomainError("negative base with non-integer exponent")
    try:
        return math.pow(a, b)
    except OverflowError:
        if a < 0 and b % 2 == 1:
            return -math.inf
        return math.inf


def _gamma(x):
    g = specfun.gamma(x)
    if g.at_pole:
        raise Pole(f"gamma pole at {x!r}")
    return g.value


def _lgamma(x):
    if specfun.is_gamma_pole(x):
        raise Pole(f"lgamma pole at {x!r}")
    if x <= 0:
        raise EvalDomainError("lgamma needs a positive argument")
    return specfun.log_gamma(x)


def _ln(x):
    if x <= 0:
        raise EvalDomainError("ln of a non-positive number")
    return math.log(x)


def _sqrt(x):
    if x < 0:
        raise EvalDomainError("sqrt of a negative number")
    return math.sqrt(x)


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _trig(fn):
    def inner(x):
        if math.isinf(x):
            raise EvalDomainError(f"{fn.__name__} of infinity")
        return fn(x)

    return inner


_IMPL = {
    "gamma": _gamma,
    "lgamma": _lgamma,
    "rgamma": specfun.reciprocal_gamma,
    "exp": _exp,
    "ln": _ln,
    "sqrt": _sqrt,
    "sin": _trig(math.sin),
    "cos": _trig(math.cos),
    "pow": _pow,
}


def _eval(node, n):
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return n
    if isinstance(node, Constant):
        return CONSTANTS[node.name]
    if isinstance(node, Unary):
        return -_eval(node.operand, n)
    if isinstance(node, Binary):
        a = _eval(node.left, n)
        b = _eval(node.right, n)
        op = node.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if b == 0.0:
                raise EvalDomainError("division by zero")
            return a / b
        return _pow(a, b)
    return _IMPL[node.func](*(_eval(a, n) for a in node.args))


def eval_ast(node, n_value):
    """Evaluate ``node`` at n = n_value.

    Raises Pole when a gamma/lgamma subterm sits on a pole and
    EvalDomainError for every other failure (including nan results).
    """
    try:
        value = _eval(node, float(n_value))
    except (Pole, EvalDomainError):
        raise
    except (ValueError, OverflowError, ZeroDivisionError) as exc:
        raise EvalDomainError(str(exc)) from None
    if math.isnan(value):
        raise EvalDomainError("expression evaluated to nan")
    return value
