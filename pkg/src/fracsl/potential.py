"""A small expression language for the potential ``q(t)``.

Grammar (``-`` may also be written as U+2212)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'

``^`` is right-associative and ``-2^2`` is ``-(2^2)``.  There is no implicit
multiplication.  Angles are in radians.

>>> q = parse_potential("t^2 - 1")
>>> q(2.0)
3.0
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Union

import numpy as np

__all__ = [
    "PotentialExpr",
    "Num",
    "Var",
    "Const",
    "Neg",
    "BinOp",
    "Call",
    "PotentialSyntaxError",
    "UnknownIdentifierError",
    "EvalError",
    "EvalErrorKind",
    "parse_potential",
    "eval_potential",
    "eval_on_nodes",
    "FUNCTIONS",
    "CONSTANTS",
]

MAX_DEPTH = 200


class PotentialSyntaxError(ValueError):
    """Malformed expression; ``offset`` is the UTF-8 byte offset of the problem."""

    def __init__(self, message: str, offset: int, text: str = ""):
        self.message = message
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at byte {offset}")


class UnknownIdentifierError(PotentialSyntaxError):
    def __init__(self, name: str, offset: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset, text)


class EvalErrorKind(enum.Enum):
    DIVISION_BY_ZERO = "division by zero"
    LOG_DOMAIN = "logarithm of a non-positive number"
    SQRT_DOMAIN = "square root of a negative number"
    POW_DOMAIN = "power undefined for these operands"
    OVERFLOW = "overflow"
    NON_FINITE = "non-finite result"


class EvalError(ArithmeticError):
    """Evaluation failure at abscissa ``t``.

    ``node`` is the sub-expression that failed; ``index`` is the grid index
    when evaluation was driven by :func:`eval_on_nodes`.
    """

    def __init__(self, kind: EvalErrorKind, t: float, node: "PotentialExpr", index=None):
        self.kind = kind
        self.t = t
        self.node = node
        self.index = index
        where = f"t={t!r}" if index is None else f"node {index} (t={t!r})"
        super().__init__(f"{kind.value} in {node.to_text()} at {where}")

    def at_index(self, index: int) -> "EvalError":
        return EvalError(self.kind, self.t, self.node, index)


# --- AST -------------------------------------------------------------------


class PotentialExpr:
    """Base class of expression nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def evaluate(self, t: float) -> float:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def __call__(self, t: float) -> float:
        return eval_potential(self, t)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Num(PotentialExpr):
    value: float

    def evaluate(self, t):
        return self.value

    def to_text(self):
        return repr(float(self.value))


@dataclass(frozen=True)
class Var(PotentialExpr):
    def evaluate(self, t):
        return t

    def to_text(self):
        return "t"


@dataclass(frozen=True)
class Const(PotentialExpr):
    name: str

    def evaluate(self, t):
        return CONSTANTS[self.name]

    def to_text(self):
        return self.name


@dataclass(frozen=True)
class Neg(PotentialExpr):
    operand: PotentialExpr

    def evaluate(self, t):
        return -self.operand.evaluate(t)

    def to_text(self):
        return f"(-{self.operand.to_text()})"


def _div(node, t, a, b):
    if b == 0.0:
        raise EvalError(EvalErrorKind.DIVISION_BY_ZERO, t, node)
    return a / b


def _pow(node, t, a, b):
    if a == 0.0 and b < 0.0:
        raise EvalError(EvalErrorKind.DIVISION_BY_ZERO, t, node)
    try:
        return math.pow(a, b)
    except OverflowError:
        raise EvalError(EvalErrorKind.OVERFLOW, t, node) from None
    except ValueError:
        raise EvalError(EvalErrorKind.POW_DOMAIN, t, node) from None


_BINOPS: dict = {
    "+": lambda node, t, a, b: a + b,
    "-": lambda node, t, a, b: a - b,
    "*": lambda node, t, a, b: a * b,
    "/": _div,
    "^": _pow,
}


@dataclass(frozen=True)
class BinOp(PotentialExpr):
    op: str
    left: PotentialExpr
    right: PotentialExpr

    def evaluate(self, t):
        a = self.left.evaluate(t)
        b = self.right.evaluate(t)
        return _BINOPS[self.op](self, t, a, b)

    def to_text(self):
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"


def _checked(fn: Callable[[float], float], kind: EvalErrorKind, bad: Callable[[float], bool]):
    def call(node, t, x):
        if bad(x):
            raise EvalError(kind, t, node)
        try:
            return fn(x)
        except OverflowError:
            raise EvalError(EvalErrorKind.OVERFLOW, t, node) from None
        except ValueError:
            raise EvalError(EvalErrorKind.NON_FINITE, t, node) from None

    return call


_never = lambda x: False  # noqa: E731

FUNCTIONS: dict = {
    "sin": _checked(math.sin, EvalErrorKind.NON_FINITE, _never),
    "cos": _checked(math.cos, EvalErrorKind.NON_FINITE, _never),
    "tan": _checked(math.tan, EvalErrorKind.NON_FINITE, _never),
    "exp": _checked(math.exp, EvalErrorKind.OVERFLOW, _never),
    "ln": _checked(math.log, EvalErrorKind.LOG_DOMAIN, lambda x: x <= 0.0),
    "sqrt": _checked(math.sqrt, EvalErrorKind.SQRT_DOMAIN, lambda x: x < 0.0),
    "abs": _checked(abs, EvalErrorKind.NON_FINITE, _never),
}

CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Call(PotentialExpr):
    func: str
    arg: PotentialExpr

    def evaluate(self, t):
        return FUNCTIONS[self.func](self, t, self.arg.evaluate(t))

    def to_text(self):
        return f"{self.func}({self.arg.to_text()})"


# --- lexer -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    offset: int  # UTF-8 byte offset


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    byte = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PotentialSyntaxError(
                f"unexpected character {text[pos]!r}; expected a number, identifier or operator",
                byte,
                text,
            )
        chunk = m.group()
        if m.lastgroup != "ws":
            tok_text = "-" if chunk == "−" else chunk
            tokens.append(_Token(m.lastgroup, tok_text, byte))
        byte += len(chunk.encode("utf-8"))
        pos = m.end()
    tokens.append(_Token("end", "", byte))
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, expected: str):
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise PotentialSyntaxError(f"expected {expected}, found {found}", tok.offset, self.text)

    def accept(self, *ops: str):
        tok = self.tok
        if tok.kind == "op" and tok.text in ops:
            self.i += 1
            return tok
        return None

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise PotentialSyntaxError("expression nested too deeply", self.tok.offset, self.text)

    def parse(self) -> PotentialExpr:
        node = self.expr()
        if self.tok.kind != "end":
            self.error("an operator or end of input")
        return node

    def expr(self):
        self.enter()
        node = self.term()
        while (tok := self.accept("+", "-")) is not None:
            node = BinOp(tok.text, node, self.term())
        self.depth -= 1
        return node

    def term(self):
        node = self.factor()
        while (tok := self.accept("*", "/")) is not None:
            node = BinOp(tok.text, node, self.factor())
        return node

    def factor(self):
        self.enter()
        if self.accept("-") is not None:
            node = Neg(self.factor())
        else:
            node = self.power()
        self.depth -= 1
        return node

    def power(self):
        base = self.atom()
        if self.accept("^") is not None:
            return BinOp("^", base, self.factor())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            value = float(tok.text)
            if not math.isfinite(value):
                raise PotentialSyntaxError("numeric literal out of range", tok.offset, self.text)
            return Num(value)
        if tok.kind == "ident":
            self.i += 1
            name = tok.text
            if name == "t":
                return Var()
            if name in CONSTANTS:
                return Const(name)
            if name in FUNCTIONS:
                if self.accept("(") is None:
                    self.error(f"'(' after {name}")
                arg = self.expr()
                if self.accept(")") is None:
                    self.error("')'")
                return Call(name, arg)
            raise UnknownIdentifierError(name, tok.offset, self.text)
        if self.accept("(") is not None:
            node = self.expr()
            if self.accept(")") is None:
                self.error("')'")
            return node
        self.error("a number, 't', a constant, a function or '('")


def parse_potential(text: Union[str, bytes]) -> PotentialExpr:
    """Parse ``text`` into an expression tree.

    Raises :class:`PotentialSyntaxError` (or its subclass
    :class:`UnknownIdentifierError`) carrying the byte offset.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise PotentialSyntaxError("input is not valid UTF-8", exc.start) from None
    return _Parser(text).parse()


def eval_potential(expr: PotentialExpr, t: float) -> float:
    """Evaluate ``expr`` at ``t``; domain failures raise :class:`EvalError`."""
    t = float(t)
    value = expr.evaluate(t)
    if not math.isfinite(value):
        raise EvalError(EvalErrorKind.NON_FINITE, t, expr)
    return float(value)


def eval_on_nodes(expr: PotentialExpr, nodes: Iterable[float]) -> np.ndarray:
    """Evaluate at every node; an :class:`EvalError` is re-raised tagged with the node index."""
    nodes = np.asarray(nodes, dtype=float)
    out = np.empty_like(nodes)
    for i, t in enumerate(nodes):
        try:
            out[i] = eval_potential(expr, t)
        except EvalError as exc:
            raise exc.at_index(i) from None
    return out
