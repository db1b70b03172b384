"""A small expression language for interval-valued functions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := REAL '*' factor | '-' factor | '[' REAL ',' REAL ']'
            | VAR | IDENT '(' args ')' | '(' expr ')'

``VAR`` is ``X1`` ... ``Xn``.  Operators use the endpoint formulas of
``ivmono.interval`` (``*`` between intervals is ``mul_pos``; ``REAL *`` is
scaling), not best-interval semantics, so ``X1 - X1`` is generally not
zero.  Calls reach the builtin registry plus ``min``/``max``; an order name
may be given as the first argument of ``min``, ``max`` and ``g-max``, and
``wmean`` takes its weights as leading numbers::

    max(lex-lower, X1, X2)
    wmean(0.25, 0.75, X1, X2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import ArityError, BadParams, ExprSyntaxError, RangeError, UnknownBuiltin
from .functions import BUILTINS, IVFunction, builtin, eval_function
from .interval import EPS_FP, Interval, add, format_interval, mul_pos, opposite, scale, sub
from .orders import ORDER_NAMES, KM, get_order


class Node:
    pass


@dataclass(frozen=True)
class Var(Node):
    index: int  # 1-based


@dataclass(frozen=True)
class Const(Node):
    value: Interval


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # '+', '-', '*'
    left: Node
    right: Node


@dataclass(frozen=True)
class Scale(Node):
    alpha: float
    arg: Node


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: Tuple[Node, ...]
    params: Tuple[float, ...] = ()
    order: Optional[str] = None
    _fn: Optional[IVFunction] = field(default=None, compare=False, repr=False)


_CALLABLES = set(BUILTINS) | {"min", "max"}
_ORDER_ARG = {"min", "max", "g-max"}
_KNOWN_IDENTS = _CALLABLES | set(ORDER_NAMES)

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<var>X[0-9]+(?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z_][A-Za-z0-9_]*)*)
  | (?P<op>[-+*()\[\],])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind, text = m.lastgroup, m.group()
        if kind == "ident":
            # a hyphen only joins words that form a known name: "X1-luk" is not one token
            parts = text.split("-")
            while len(parts) > 1 and "-".join(parts) not in _KNOWN_IDENTS:
                parts.pop()
            text = "-".join(parts)
        if kind == "ws":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = pos + text.rindex("\n") + 1
        else:
            tokens.append(Token(kind if kind != "op" else text, text, line, col))
        pos += len(text)
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, src: str, arity: int):
        self.tokens = tokenize(src)
        self.i = 0
        self.arity = arity

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def fail(self, expected, message=None):
        t = self.tok
        what = f"unexpected {t.text!r}" if t.kind != "eof" else "unexpected end of input"
        raise ExprSyntaxError(message or what, t.line, t.col, expected)

    def expect(self, kind) -> Token:
        if self.tok.kind != kind:
            self.fail({kind})
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail({"+", "-", "*", "end of input"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "*":
            self.i += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            self.expect("*")
            return Scale(float(t.text), self.factor())
        if t.kind == "-":
            self.i += 1
            return Neg(self.factor())
        if t.kind == "[":
            self.i += 1
            lo = self.signed_number()
            self.expect(",")
            hi = self.signed_number()
            self.expect("]")
            try:
                return Const(Interval(lo, hi))
            except ValueError as exc:
                raise ExprSyntaxError(str(exc), t.line, t.col) from None
        if t.kind == "var":
            k = int(t.text[1:])
            if k < 1 or k > self.arity:
                raise ArityError(f"{t.text} at line {t.line}, column {t.col} exceeds arity {self.arity}")
            self.i += 1
            return Var(k)
        if t.kind == "ident":
            return self.call()
        if t.kind == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        self.fail({"number", "-", "[", "variable", "identifier", "("})

    def signed_number(self) -> float:
        sign = 1.0
        if self.tok.kind in ("-", "+"):
            sign = -1.0 if self.tok.kind == "-" else 1.0
            self.i += 1
        return sign * float(self.expect("num").text)

    def call(self) -> Call:
        t = self.expect("ident")
        name = t.text.replace("_", "-")
        if name not in _CALLABLES:
            raise ExprSyntaxError(f"unknown function {t.text!r}", t.line, t.col, _CALLABLES)
        self.expect("(")
        params: List[float] = []
        order = None
        args: List[Node] = []
        while True:
            cur, nxt = self.tok, self.peek()
            if cur.kind == "num" and nxt.kind in (",", ")") and not args:
                params.append(float(cur.text))
                self.i += 1
            elif (cur.kind == "ident" and name in _ORDER_ARG and order is None and not args
                  and cur.text in ORDER_NAMES):
                order = cur.text
                self.i += 1
            else:
                args.append(self.expr())
            if self.tok.kind == ",":
                self.i += 1
                continue
            self.expect(")")
            break
        node = Call(name, tuple(args), tuple(params), order)
        return _bind(node, t)


def _bind(node: Call, t: Token) -> Call:
    """Check a call's shape and attach the builtin that evaluates it."""
    n = len(node.args)
    if n == 0:
        raise ArityError(f"{node.name} at line {t.line}, column {t.col} needs at least one argument")
    if node.name in ("min", "max"):
        if node.params:
            raise ExprSyntaxError(f"{node.name} takes no numeric parameters", t.line, t.col)
        return node
    params: Sequence = node.params
    if node.name == "g-max":
        if node.params:
            raise ExprSyntaxError("g-max takes an order name, not numbers", t.line, t.col)
        params = (node.order or "km",)
    try:
        fn = builtin(node.name, params, arity=n)
    except (ArityError, BadParams, UnknownBuiltin) as exc:
        if isinstance(exc, ArityError):
            raise ArityError(f"{exc} (line {t.line}, column {t.col})") from None
        raise ExprSyntaxError(str(exc), t.line, t.col) from None
    object.__setattr__(node, "_fn", fn)
    return node


def parse_ast(src: str, arity: int) -> Node:
    if arity < 1:
        raise ArityError("arity must be at least 1")
    return _Parser(src, arity).parse()


def evaluate_ast(node: Node, args: Sequence[Interval]) -> Interval:
    if isinstance(node, Var):
        return args[node.index - 1]
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Neg):
        return opposite(evaluate_ast(node.arg, args))
    if isinstance(node, Scale):
        return scale(node.alpha, evaluate_ast(node.arg, args))
    if isinstance(node, BinOp):
        a = evaluate_ast(node.left, args)
        b = evaluate_ast(node.right, args)
        if node.op == "+":
            return add(a, b)
        if node.op == "-":
            return sub(a, b)
        return mul_pos(a, b)
    if isinstance(node, Call):
        vals = [evaluate_ast(a, args) for a in node.args]
        if node.name in ("min", "max"):
            order = get_order(node.order) if node.order else KM
            pick = order.maximum if node.name == "max" else order.minimum
            out = vals[0]
            for v in vals[1:]:
                out = pick(out, v)
            return out
        return eval_function(node._fn, vals)
    raise TypeError(f"not an expression node: {node!r}")


def _num(v: float) -> str:
    return repr(float(v))


def to_source(node: Node) -> str:
    """Render an AST so that ``parse_ast(to_source(n))`` rebuilds ``n``.

    Holds for every tree the parser produces.  A hand-built ``Scale`` with a
    negative factor has no literal form and prints as a negated scale,
    which evaluates to the same interval.
    """
    if isinstance(node, Var):
        return f"X{node.index}"
    if isinstance(node, Const):
        return f"[{_num(node.value.lo)},{_num(node.value.hi)}]"
    if isinstance(node, Neg):
        return "-" + _factor(node.arg)
    if isinstance(node, Scale):
        if node.alpha < 0:
            return "-" + _factor(Scale(-node.alpha, node.arg))
        return f"{_num(node.alpha)} * {_factor(node.arg)}"
    if isinstance(node, BinOp):
        if node.op == "*":
            left = to_source(node.left) if _is_term(node.left) else f"({to_source(node.left)})"
            return f"{left} * {_factor(node.right)}"
        right = to_source(node.right)
        if isinstance(node.right, BinOp) and node.right.op in "+-":
            right = f"({right})"
        return f"{to_source(node.left)} {node.op} {right}"
    if isinstance(node, Call):
        parts = [_num(p) for p in node.params]
        if node.order:
            parts.append(node.order)
        parts.extend(to_source(a) for a in node.args)
        return f"{node.name}({', '.join(parts)})"
    raise TypeError(f"not an expression node: {node!r}")


def _is_term(node: Node) -> bool:
    return not (isinstance(node, BinOp) and node.op in "+-")


def _factor(node: Node) -> str:
    # a lone factor: products and sums need parentheses here
    if isinstance(node, BinOp):
        return f"({to_source(node)})"
    return to_source(node)


class ExprFunction(IVFunction):
    """IVFunction backed by a parsed expression; results must lie in [0, 1]."""

    def __init__(self, ast: Node, arity: int, source: Optional[str] = None):
        self.ast = ast
        self.arity = arity
        self.source = source if source is not None else to_source(ast)
        self.name = self.source

    def evaluate(self, args):
        r = evaluate_ast(self.ast, args)
        lo, hi = r.lo, r.hi
        if -EPS_FP <= lo < 0.0:
            lo = 0.0
        if 1.0 < hi <= 1.0 + EPS_FP:
            hi = 1.0
        if lo < 0.0 or hi > 1.0:
            point = ", ".join(format_interval(x) for x in args)
            raise RangeError(f"{self.source} = {format_interval(r)} is outside [0,1] at ({point})",
                             point=tuple(args), value=r)
        return Interval(lo, hi)

    def __eq__(self, other):
        return isinstance(other, ExprFunction) and (self.ast, self.arity) == (other.ast, other.arity)

    def __hash__(self):
        return hash((self.ast, self.arity))


def parse(src: str, arity: int) -> ExprFunction:
    return ExprFunction(parse_ast(src, arity), arity, src.strip())
