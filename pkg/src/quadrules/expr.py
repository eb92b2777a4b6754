"""Integrand expressions: parsing, printing, evaluation and derivatives.

The input language is one-variable infix arithmetic::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?            right-associative
    atom   := NUMBER | "pi" | "x"
            | ("sin" | "cos" | "sqrt") "(" expr ")"
            | "(" expr ")"

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.  NUMBER is
an integer or decimal literal; integers stay exact, decimal literals are
converted at whatever working precision is active when the tree is
evaluated, so one tree serves every precision.  Whitespace is ignored.
Syntax errors report the byte offset of the offending token.

Trees are immutable (frozen dataclasses, structural equality), evaluation
is a pure function of (tree, x), and ``parse(to_text(e))`` reproduces ``e``
exactly, so expressions can be shared between threads and serialized
through their printed form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mpmath import mp, mpf

from .precision import workprec


class ParseError(ValueError):
    """Rejected input text; ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"syntax error at byte offset {offset}: {message}")


class DomainError(ArithmeticError):
    """Evaluation left the real domain (sqrt of a negative, zero division).

    Carries the offending node and, when known, the evaluation point and
    the composite panel the point belongs to.
    """

    def __init__(self, reason, node=None, x=None, panel=None, panels=None):
        self.reason = reason
        self.node = node
        self.x = x
        self.panel = panel
        self.panels = panels
        parts = [reason]
        if node is not None:
            parts.append(f"in {to_text(node)}")
        if x is not None:
            parts.append(f"at x = {x}")
        if panel is not None:
            of = f" of {panels}" if panels is not None else ""
            parts.append(f"(panel {panel}{of})")
        super().__init__(" ".join(parts))

    def located(self, x=None, panel=None, panels=None):
        """Copy of the error annotated with an evaluation point and panel."""
        return DomainError(self.reason, self.node,
                           x if x is not None else self.x, panel, panels)


class DifferentiationError(ValueError):
    """The derivative is not expressible in this node vocabulary."""


class Expression:
    """Base class for all nodes; subclasses are frozen dataclasses."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Expression):
    # int for integer literals (exact), str for decimal literals (converted
    # at evaluation precision).  May be negative: unary minus folds in.
    value: object


@dataclass(frozen=True)
class PiConst(Expression):
    pass


@dataclass(frozen=True)
class Var(Expression):
    pass


@dataclass(frozen=True)
class Add(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Sub(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Mul(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Div(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Pow(Expression):
    base: Expression
    exponent: Expression


@dataclass(frozen=True)
class Neg(Expression):
    arg: Expression


@dataclass(frozen=True)
class Sin(Expression):
    arg: Expression


@dataclass(frozen=True)
class Cos(Expression):
    arg: Expression


@dataclass(frozen=True)
class Sqrt(Expression):
    arg: Expression


# ---------------------------------------------------------------------------
# tokenizer / parser

_NUM_RE = re.compile(r"\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
                     r"|\d+(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT_RE = re.compile(r"\d+\Z")

_FUNCTIONS = {"sin": Sin, "cos": Cos, "sqrt": Sqrt}


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        off = _byte_offset(text, i)
        m = _NUM_RE.match(text, i)
        if m:
            lexeme = m.group()
            value = int(lexeme) if _INT_RE.match(lexeme) else lexeme
            tokens.append(("num", value, off))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(("ident", m.group(), off))
            i = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, off))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", off)
    tokens.append(("eof", "", _byte_offset(text, n)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.advance()
        if tok[0] != kind:
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {what}, got {got}", tok[2])
        return tok

    def parse(self):
        if self.peek()[0] == "eof":
            raise ParseError("empty input", self.peek()[2])
        e = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self):
        e = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return _negate(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self):
        tok = self.advance()
        kind, value, off = tok
        if kind == "num":
            return Num(value)
        if kind == "ident":
            if value == "pi":
                return PiConst()
            if value == "x":
                return Var()
            if value in _FUNCTIONS:
                self.expect("(", f"'(' after {value}")
                arg = self.expr()
                self.expect(")", "')'")
                return _FUNCTIONS[value](arg)
            raise ParseError(f"unknown identifier {value!r}", off)
        if kind == "(":
            e = self.expr()
            self.expect(")", "')'")
            return e
        got = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"expected expression, got {got}", off)


def parse(text):
    """Parse expression text to a tree.  Raises ParseError on bad input."""
    if not isinstance(text, str):
        raise TypeError("expression source must be a string")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing: canonical parenthesized infix, inverse of parse()

# precedence levels used for minimal parenthesization
_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 9


def _prec(e):
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, Num) and _num_is_negative(e.value):
        return _PREC_NEG  # prints with a leading minus, parse like a Neg
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _num_is_negative(value):
    return value < 0 if isinstance(value, int) else value.startswith("-")


def _fmt(e, ctx):
    text = _fmt_inner(e)
    return f"({text})" if _prec(e) < ctx else text


def _fmt_inner(e):
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, PiConst):
        return "pi"
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Add):
        return f"{_fmt(e.left, _PREC_ADD)} + {_fmt(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Sub):
        return f"{_fmt(e.left, _PREC_ADD)} - {_fmt(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Mul):
        return f"{_fmt(e.left, _PREC_MUL)} * {_fmt(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Div):
        return f"{_fmt(e.left, _PREC_MUL)} / {_fmt(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Neg):
        return f"-{_fmt(e.arg, _PREC_NEG)}"
    if isinstance(e, Pow):
        return f"{_fmt(e.base, _PREC_ATOM)} ^ {_fmt(e.exponent, _PREC_NEG)}"
    if isinstance(e, Sin):
        return f"sin({_fmt(e.arg, 0)})"
    if isinstance(e, Cos):
        return f"cos({_fmt(e.arg, 0)})"
    if isinstance(e, Sqrt):
        return f"sqrt({_fmt(e.arg, 0)})"
    raise TypeError(f"not an expression node: {e!r}")


def to_text(e):
    """Canonical infix text; parse(to_text(e)) is structurally equal to e."""
    return _fmt(e, 0)


# ---------------------------------------------------------------------------
# evaluation

def _eval(e, x):
    if isinstance(e, Num):
        return mpf(e.value)
    if isinstance(e, PiConst):
        return +mp.pi
    if isinstance(e, Var):
        if x is None:
            raise DomainError("free variable x in a constant context", e)
        return x
    if isinstance(e, Add):
        return _eval(e.left, x) + _eval(e.right, x)
    if isinstance(e, Sub):
        return _eval(e.left, x) - _eval(e.right, x)
    if isinstance(e, Mul):
        return _eval(e.left, x) * _eval(e.right, x)
    if isinstance(e, Div):
        den = _eval(e.right, x)
        if den == 0:
            raise DomainError("division by zero", e)
        return _eval(e.left, x) / den
    if isinstance(e, Pow):
        base = _eval(e.base, x)
        expo = _eval(e.exponent, x)
        if base == 0 and expo < 0:
            raise DomainError("zero raised to a negative power", e)
        if base < 0 and not mp.isint(expo):
            raise DomainError("fractional power of a negative base", e)
        return base ** expo
    if isinstance(e, Neg):
        return -_eval(e.arg, x)
    if isinstance(e, Sin):
        return mp.sin(_eval(e.arg, x))
    if isinstance(e, Cos):
        return mp.cos(_eval(e.arg, x))
    if isinstance(e, Sqrt):
        v = _eval(e.arg, x)
        if v < 0:
            raise DomainError("square root of a negative value", e)
        return mp.sqrt(v)
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e, x, precision=53):
    """Value of ``e`` at ``x``, every operation rounded at ``precision`` bits.

    ``x`` may be an mpmath float (used as given), an int, or a decimal
    string; the latter two are converted at the requested precision.
    Raises DomainError, annotated with the evaluation point, when the
    value leaves the real domain.
    """
    with workprec(precision):
        if isinstance(x, (int, str)):
            x = mpf(x)
        try:
            return +_eval(e, x)
        except DomainError as err:
            raise err.located(x=x) from None


def constant_value(e):
    """Value of a variable-free tree at the ambient working precision."""
    return _eval(e, None)


def has_free_var(e):
    if isinstance(e, Var):
        return True
    if isinstance(e, (Num, PiConst)):
        return False
    if isinstance(e, (Add, Sub, Mul, Div)):
        return has_free_var(e.left) or has_free_var(e.right)
    if isinstance(e, Pow):
        return has_free_var(e.base) or has_free_var(e.exponent)
    return has_free_var(e.arg)


# ---------------------------------------------------------------------------
# simplifying constructors (additive and multiplicative identities plus
# exact integer folding; anything beyond that is out of scope on purpose)

def _is_int(e, k=None):
    return isinstance(e, Num) and isinstance(e.value, int) and \
        (k is None or e.value == k)


def _negate(e):
    if isinstance(e, Num):
        if isinstance(e.value, int):
            return Num(-e.value)
        text = e.value
        return Num(text[1:]) if text.startswith("-") else Num("-" + text)
    if isinstance(e, Neg):
        return e.arg
    return Neg(e)


def _add(a, b):
    if _is_int(a, 0):
        return b
    if _is_int(b, 0):
        return a
    if _is_int(a) and _is_int(b):
        return Num(a.value + b.value)
    return Add(a, b)


def _sub(a, b):
    if _is_int(b, 0):
        return a
    if _is_int(a, 0):
        return _negate(b)
    if _is_int(a) and _is_int(b):
        return Num(a.value - b.value)
    return Sub(a, b)


def _mul(a, b):
    if _is_int(a, 0) or _is_int(b, 0):
        return Num(0)
    if _is_int(a, 1):
        return b
    if _is_int(b, 1):
        return a
    if _is_int(a) and _is_int(b):
        return Num(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if _is_int(b, 1):
        return a
    return Div(a, b)


def _pow(a, b):
    if _is_int(b, 1):
        return a
    if _is_int(b, 0):
        return Num(1)
    if _is_int(a) and _is_int(b) and 0 <= b.value <= 16:
        return Num(a.value ** b.value)
    return Pow(a, b)


# ---------------------------------------------------------------------------
# symbolic differentiation

def differentiate(e):
    """d/dx of ``e`` by structural rules, with identity simplification.

    Power nodes must have a constant exponent: the node vocabulary has no
    logarithm, so d/dx of u(x)^v(x) with x in the exponent is not
    expressible and raises DifferentiationError.
    """
    if isinstance(e, (Num, PiConst)):
        return Num(0)
    if isinstance(e, Var):
        return Num(1)
    if isinstance(e, Add):
        return _add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return _sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        return _add(_mul(differentiate(e.left), e.right),
                    _mul(e.left, differentiate(e.right)))
    if isinstance(e, Div):
        num = _sub(_mul(differentiate(e.left), e.right),
                   _mul(e.left, differentiate(e.right)))
        return _div(num, _pow(e.right, Num(2)))
    if isinstance(e, Pow):
        if has_free_var(e.exponent):
            raise DifferentiationError(
                f"cannot differentiate {to_text(e)}: exponent contains x")
        r = e.exponent
        du = differentiate(e.base)
        return _mul(_mul(r, _pow(e.base, _sub(r, Num(1)))), du)
    if isinstance(e, Neg):
        return _negate(differentiate(e.arg))
    if isinstance(e, Sin):
        return _mul(Cos(e.arg), differentiate(e.arg))
    if isinstance(e, Cos):
        return _negate(_mul(Sin(e.arg), differentiate(e.arg)))
    if isinstance(e, Sqrt):
        return _div(differentiate(e.arg), _mul(Num(2), Sqrt(e.arg)))
    raise TypeError(f"not an expression node: {e!r}")
