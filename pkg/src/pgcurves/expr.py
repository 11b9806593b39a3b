"""Single-variable expressions: parsing, evaluation and symbolic derivatives.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right associative, constant exponent
    atom   := NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'

Functions: sin cos sinh cosh tanh exp ln sqrt abs. Named constants: pi, e
(unless shadowed by the variable). There is no unary plus and no implicit
multiplication. Trees are immutable; the only simplification performed is
constant folding.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "ExprError",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "EvalDomainError",
    "parse",
    "evaluate",
    "differentiate",
    "FUNCTIONS",
]

FUNCTIONS = ("sin", "cos", "sinh", "cosh", "tanh", "exp", "ln", "sqrt", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e}


class ExprError(ValueError):
    """Base class for problems with expression text."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


class UnknownIdentifierError(ExprError):
    def __init__(self, name: str, column: int):
        super().__init__(f"unknown identifier {name!r} at column {column}")
        self.name = name
        self.column = column


class EvalDomainError(ArithmeticError):
    """Evaluation left the domain of a sub-expression (or overflowed)."""

    def __init__(self, reason: str, subexpr: Expr, at=None):
        where = "" if at is None else f" (variable = {at!r})"
        super().__init__(f"{reason} in '{subexpr}'{where}")
        self.reason = reason
        self.subexpr = subexpr
        self.at = at


# precedence levels used by the printer
_P_ADD, _P_MUL, _P_NEG, _P_POW, _P_ATOM = 1, 2, 3, 4, 5


class Expr:
    """Base class; concrete nodes are frozen dataclasses."""

    prec = _P_ATOM

    def __call__(self, value):
        return self.evaluate(value)

    def evaluate(self, value):
        """Evaluate at a float or a numpy array of points."""
        scalar = np.ndim(value) == 0
        arr = np.asarray(value, dtype=float)
        with np.errstate(all="ignore"):
            out = self._eval(arr, arr)
        out = np.broadcast_to(out, arr.shape).astype(float)
        return float(out) if scalar else out

    def diff(self) -> Expr:
        return self._diff

    @cached_property
    def _diff(self) -> Expr:
        return self._derive()

    @property
    def is_constant(self) -> bool:
        return not self.variables()

    def variables(self) -> frozenset:
        return frozenset().union(*(c.variables() for c in self.children()))

    def children(self) -> tuple:
        return ()

    def subs(self, replacement: Expr) -> Expr:
        """Replace the variable by ``replacement`` (function composition)."""
        raise NotImplementedError

    # operator sugar for building trees in code
    def __add__(self, other):
        return add(self, _wrap(other))

    def __radd__(self, other):
        return add(_wrap(other), self)

    def __sub__(self, other):
        return sub(self, _wrap(other))

    def __rsub__(self, other):
        return sub(_wrap(other), self)

    def __mul__(self, other):
        return mul(self, _wrap(other))

    def __rmul__(self, other):
        return mul(_wrap(other), self)

    def __truediv__(self, other):
        return div(self, _wrap(other))

    def __rtruediv__(self, other):
        return div(_wrap(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, k):
        return power(self, float(k))


def _wrap(v) -> Expr:
    return v if isinstance(v, Expr) else Num(float(v))


def _fmt_number(v: float) -> str:
    text = repr(float(v))
    return text[:-2] if text.endswith(".0") else text


def _check(out, ok, node, arg):
    """Raise EvalDomainError at the first point where ``ok`` is False."""
    if np.all(ok):
        return out
    bad = np.flatnonzero(~np.broadcast_to(ok, np.shape(arg) or (1,)).ravel())
    at = np.ravel(arg)[bad[0]] if np.ndim(arg) else float(arg)
    raise EvalDomainError(node._domain_reason, node, float(at))


@dataclass(frozen=True, eq=True)
class Num(Expr):
    value: float

    def _eval(self, x, root):
        return np.full(np.shape(x), self.value)

    def _derive(self):
        return ZERO

    def subs(self, replacement):
        return self

    def __str__(self):
        return _fmt_number(self.value)

    @property
    def prec(self):
        return _P_NEG if self.value < 0 or str(self).startswith("-") else _P_ATOM


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str

    def _eval(self, x, root):
        return x

    def _derive(self):
        return ONE

    def variables(self):
        return frozenset([self.name])

    def subs(self, replacement):
        return replacement

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr
    prec = _P_NEG

    def children(self):
        return (self.arg,)

    def _eval(self, x, root):
        return -self.arg._eval(x, root)

    def _derive(self):
        return neg(self.arg.diff())

    def subs(self, replacement):
        return neg(self.arg.subs(replacement))

    def __str__(self):
        inner = str(self.arg)
        if self.arg.prec <= _P_NEG:
            inner = f"({inner})"
        return f"-{inner}"


@dataclass(frozen=True, eq=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    @property
    def prec(self):
        return _P_ADD if self.op in "+-" else _P_MUL

    _domain_reason = "division by zero"

    def _eval(self, x, root):
        a = self.left._eval(x, root)
        b = self.right._eval(x, root)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        _check(None, b != 0.0, self, root)
        return a / b

    def _derive(self):
        a, b = self.left, self.right
        da, db = a.diff(), b.diff()
        if self.op == "+":
            return add(da, db)
        if self.op == "-":
            return sub(da, db)
        if self.op == "*":
            return add(mul(da, b), mul(a, db))
        # quotient rule
        return div(sub(mul(da, b), mul(a, db)), power(b, 2.0))

    def subs(self, replacement):
        return _binop(self.op, self.left.subs(replacement), self.right.subs(replacement))

    def __str__(self):
        p = self.prec
        left = str(self.left)
        if self.left.prec < p:
            left = f"({left})"
        right = str(self.right)
        if self.right.prec <= p:
            right = f"({right})"
        return f"{left} {self.op} {right}"


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: float
    prec = _P_POW

    def children(self):
        return (self.base,)

    @property
    def _domain_reason(self):
        return "power outside its domain"

    def _eval(self, x, root):
        b = self.base._eval(x, root)
        k = self.exponent
        if float(k).is_integer():
            if k < 0:
                _check(None, b != 0.0, self, root)
        else:
            _check(None, b > 0.0 if k < 0 else b >= 0.0, self, root)
        return np.power(b, k)

    def _derive(self):
        k = self.exponent
        return mul(mul(Num(k), power(self.base, k - 1.0)), self.base.diff())

    def subs(self, replacement):
        return power(self.base.subs(replacement), self.exponent)

    def __str__(self):
        base = str(self.base)
        if self.base.prec <= _P_POW:
            base = f"({base})"
        return f"{base}^{_fmt_number(self.exponent)}"


_FUNC_IMPL = {
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
    "exp": np.exp,
    "ln": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}


@dataclass(frozen=True, eq=True)
class Call(Expr):
    func: str
    arg: Expr

    def children(self):
        return (self.arg,)

    @property
    def _domain_reason(self):
        if self.func == "ln":
            return "logarithm of a non-positive value"
        if self.func == "sqrt":
            return "square root of a negative value"
        return "overflow"

    def _eval(self, x, root):
        u = self.arg._eval(x, root)
        if self.func == "ln":
            _check(None, u > 0.0, self, root)
        elif self.func == "sqrt":
            _check(None, u >= 0.0, self, root)
        out = _FUNC_IMPL[self.func](u)
        if self.func in ("exp", "sinh", "cosh"):
            _check(None, np.isfinite(out) | ~np.isfinite(u), self, root)
        return out

    def _derive(self):
        u = self.arg
        f = self.func
        if f == "sin":
            outer = call("cos", u)
        elif f == "cos":
            outer = neg(call("sin", u))
        elif f == "sinh":
            outer = call("cosh", u)
        elif f == "cosh":
            outer = call("sinh", u)
        elif f == "tanh":
            outer = sub(ONE, power(call("tanh", u), 2.0))
        elif f == "exp":
            outer = self
        elif f == "ln":
            return div(u.diff(), u)
        elif f == "sqrt":
            return div(u.diff(), mul(Num(2.0), self))
        else:  # abs: u/|u|, undefined at 0
            outer = div(u, self)
        return mul(outer, u.diff())

    def subs(self, replacement):
        return call(self.func, self.arg.subs(replacement))

    def __str__(self):
        return f"{self.func}({self.arg})"


ZERO = Num(0.0)
ONE = Num(1.0)


def _fold(node: Expr) -> Expr:
    """Collapse a variable-free node to a literal when evaluation is clean."""
    if node.variables():
        return node
    try:
        value = node.evaluate(0.0)
    except EvalDomainError:
        return node
    return Num(value) if math.isfinite(value) else node


def _is(node, v):
    return isinstance(node, Num) and node.value == v


def add(a, b):
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    return _fold(BinOp("+", a, b))


def sub(a, b):
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return neg(b)
    return _fold(BinOp("-", a, b))


def mul(a, b):
    if _is(a, 0.0) or _is(b, 0.0):
        return ZERO
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    return _fold(BinOp("*", a, b))


def div(a, b):
    if _is(b, 1.0):
        return a
    if _is(a, 0.0) and not _is(b, 0.0):
        return ZERO
    return _fold(BinOp("/", a, b))


def neg(a):
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(base, k):
    k = float(k)
    if k == 1.0:
        return base
    if k == 0.0:
        return ONE
    return _fold(Pow(base, k))


def call(func, arg):
    if func not in _FUNC_IMPL:
        raise ValueError(f"unknown function {func!r}")
    return _fold(Call(func, arg))


def _binop(op, a, b):
    return {"+": add, "-": sub, "*": mul, "/": div}[op](a, b)


# --- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ExprSyntaxError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, varname):
        self.tokens = _tokenize(text)
        self.i = 0
        self.varname = varname

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, tok=None):
        kind, value, col = tok or self.tok
        what = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"unexpected {what}", col)

    def parse(self):
        node = self.expr()
        if self.tok[0] != "end":
            self.fail()
        return node

    def expr(self):
        node = self.term()
        while self.tok[1] in ("+", "-") and self.tok[0] == "op":
            op = self.take()[1]
            node = _binop(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok[1] in ("*", "/") and self.tok[0] == "op":
            op = self.take()[1]
            node = _binop(op, node, self.unary())
        return node

    def unary(self):
        if self.tok == ("op", "-", self.tok[2]):
            self.take()
            return neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            caret = self.take()
            exponent = self.unary()
            if exponent.variables():
                raise ExprSyntaxError("exponent must be constant (use exp(b*ln(a)))", caret[2])
            value = exponent.evaluate(0.0) if not isinstance(exponent, Num) else exponent.value
            return power(base, value)
        return base

    def atom(self):
        kind, value, col = self.tok
        if kind == "num":
            self.take()
            return Num(float(value))
        if kind == "name":
            self.take()
            is_call = self.tok[0] == "op" and self.tok[1] == "("
            if value == self.varname and not is_call:
                return Var(value)
            if is_call:
                if value not in FUNCTIONS:
                    raise UnknownIdentifierError(value, col)
                self.take()
                arg = self.expr()
                self.expect_close()
                return call(value, arg)
            if value in CONSTANTS:
                return Num(CONSTANTS[value])
            if value in FUNCTIONS:
                raise ExprSyntaxError(f"function {value!r} needs an argument in parentheses", col)
            raise UnknownIdentifierError(value, col)
        if kind == "op" and value == "(":
            self.take()
            node = self.expr()
            self.expect_close()
            return node
        self.fail()

    def expect_close(self):
        if self.tok[0] == "op" and self.tok[1] == ")":
            self.take()
            return
        kind, value, col = self.tok
        if kind == "end":
            raise ExprSyntaxError("missing ')'", col)
        self.fail()


def parse(text: str, varname: str = "x") -> Expr:
    """Parse ``text`` as an expression in the single variable ``varname``.

    Raises :class:`ExprSyntaxError` (with a 1-based column) or
    :class:`UnknownIdentifierError`.
    """
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", varname) or varname in FUNCTIONS:
        raise ValueError(f"invalid variable name {varname!r}")
    return _Parser(text, varname).parse()


def evaluate(e: Expr, value):
    return e.evaluate(value)


def differentiate(e: Expr, order: int = 1) -> Expr:
    for _ in range(order):
        e = e.diff()
    return e
