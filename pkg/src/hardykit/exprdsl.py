"""A small expression language for scalar functions of one variable.

Grammar (EBNF):

    expr    := term { ('+'|'-') term }
    term    := factor { ('*'|'/') factor }
    factor  := unary [ '^' factor ]          -- '^' is right-associative
    unary   := '-' unary | primary
    primary := NUMBER | IDENT | IDENT '(' expr {',' expr} ')' | '(' expr ')'

NUMBER is a decimal with optional exponent.  An IDENT that is not in the
builtin table is a parameter; the reserved variable is 't' (an alternative
variable name, e.g. 's' for nonlinearity profiles H, can be chosen at parse
time).  Note that the grammar attaches unary minus below '^', so '-x^2'
parses as '(-x)^2'; write '-(x^2)' when the other reading is meant.

Evaluation is pure: a parsed ScalarExpr is immutable, evaluating it twice
with the same binding gives bit-identical results, and the exact first
derivative d/dt comes from dual-number propagation through every builtin.
Division by zero and log of a nonpositive number are hard errors rather
than IEEE infinities, so certification never silently saturates; overflow
of exp/sinh/cosh saturates to inf (such terms only ever appear in positions
where their reciprocal is taken).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import geometry as _geo
from . import specfun as _sf
from .errors import (
    EvalError,
    ExprSyntaxError,
    HardykitError,
    UnboundParameterError,
    UnsupportedDerivativeError,
)

__all__ = [
    "ScalarExpr",
    "ParamBinding",
    "Dual",
    "parse",
    "evaluate",
    "evaluate_d",
    "BUILTIN_ARITY",
]

ParamBinding = Mapping[str, float]

# ---------------------------------------------------------------------------
# dual numbers


class Dual:
    """Value plus first derivative with respect to the expression variable."""

    __slots__ = ("v", "d")

    def __init__(self, v: float, d: float = 0.0):
        self.v = v
        self.d = d

    def __repr__(self):
        return f"Dual({self.v!r}, {self.d!r})"


def _dual_mul(a: Dual, b: Dual) -> Dual:
    return Dual(a.v * b.v, a.d * b.v + a.v * b.d)


def _dual_div(a: Dual, b: Dual) -> Dual:
    if b.v == 0.0:
        raise EvalError("division by zero")
    v = a.v / b.v
    return Dual(v, (a.d - v * b.d) / b.v)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _pow_value(x: float, y: float) -> float:
    if x > 0.0:
        try:
            return x**y
        except OverflowError:
            return math.inf
    if x == 0.0:
        if y > 0.0:
            return 0.0
        raise EvalError(f"0.0 raised to nonpositive power {y!r}")
    if y != round(y):
        raise EvalError(f"negative base {x!r} with non-integer exponent {y!r}")
    try:
        return x**y
    except (OverflowError, ZeroDivisionError):
        raise EvalError(f"power overflow at {x!r}^{y!r}")


def _pow_dual(a: Dual, b: Dual) -> Dual:
    v = _pow_value(a.v, b.v)
    d = 0.0
    if a.d != 0.0:
        if a.v == 0.0:
            if b.v < 1.0:
                raise EvalError(f"derivative of 0^{b.v!r} is unbounded")
            d += 0.0 if b.v > 1.0 else a.d
        else:
            d += b.v * _pow_value(a.v, b.v - 1.0) * a.d
    if b.d != 0.0:
        if a.v <= 0.0:
            raise EvalError(f"derivative through exponent needs positive base, got {a.v!r}")
        d += v * math.log(a.v) * b.d
    return Dual(v, d)


# ---------------------------------------------------------------------------
# builtin table

def _coth_value(x: float) -> float:
    if x == 0.0:
        raise EvalError("coth(0) undefined")
    return _geo._coth(x) if x > 0.0 else -_geo._coth(-x)


def _need_kappa(binding: ParamBinding) -> float:
    try:
        return binding["kappa"]
    except KeyError:
        raise UnboundParameterError("builtin needs 'kappa' in the binding") from None


def _const_arg(d: Dual, what: str) -> float:
    if d.d != 0.0:
        raise UnsupportedDerivativeError(f"no derivative rule through the {what} argument")
    return d.v


def _bj_value(args, binding):
    return _sf.bessel_j(args[0], args[1])


def _bj_dual(args, binding):
    nu = _const_arg(args[0], "besselj order")
    x = args[1]
    v = _sf.bessel_j(nu, x.v)
    if x.d == 0.0:
        return Dual(v, 0.0)
    if x.v == 0.0:
        if nu == 1.0:
            return Dual(v, 0.5 * x.d)
        if nu == 0.0 or nu > 1.0:
            return Dual(v, 0.0)
        raise EvalError(f"besselj({nu}, x) has unbounded derivative at x=0")
    return Dual(v, _sf._bessel_j_dx(nu, x.v) * x.d)


def _br_value(args, binding):
    return _sf.bessel_ratio(args[0], args[1])


def _br_dual(args, binding):
    nu = _const_arg(args[0], "besselratio order")
    x = args[1]
    r = _sf.bessel_ratio(nu, x.v)
    return Dual(r, _sf.bessel_ratio_dx(nu, x.v, r) * x.d)


def _hyp_value(args, binding):
    return _sf.hyp2f1(args[0], args[1], args[2], args[3])


def _hyp_dual(args, binding):
    a = _const_arg(args[0], "hyp2f1 parameter")
    b = _const_arg(args[1], "hyp2f1 parameter")
    c = _const_arg(args[2], "hyp2f1 parameter")
    z = args[3]
    v = _sf.hyp2f1(a, b, c, z.v)
    d = _sf.hyp2f1_dz(a, b, c, z.v) * z.d if z.d != 0.0 else 0.0
    return Dual(v, d)


def _gamma_dual(args, binding):
    x = args[0]
    if x.d != 0.0:
        raise UnsupportedDerivativeError("gamma is excluded from differentiation paths")
    return Dual(_sf.gamma(x.v), 0.0)


def _u1(fv: Callable[[float], float], fd: Callable[[float, float], float]):
    """Make a (value, dual) implementation pair for a unary chain rule fd(x, v)."""

    def value(args, binding):
        return fv(args[0])

    def dual(args, binding):
        x = args[0]
        v = fv(x.v)
        d = fd(x.v, v) * x.d if x.d != 0.0 else 0.0
        return Dual(v, d)

    return value, dual


def _log_v(x: float) -> float:
    if x <= 0.0:
        raise EvalError(f"log of nonpositive value {x!r}")
    return math.log(x)


def _sqrt_v(x: float) -> float:
    if x < 0.0:
        raise EvalError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


def _sqrt_d(x: float, v: float) -> float:
    if x == 0.0:
        raise EvalError("derivative of sqrt is unbounded at 0")
    return 0.5 / v


def _sinh_v(x: float) -> float:
    try:
        return math.sinh(x)
    except OverflowError:
        return math.copysign(math.inf, x)


def _cosh_v(x: float) -> float:
    try:
        return math.cosh(x)
    except OverflowError:
        return math.inf


def _ct_pair():
    def value(args, binding):
        return _geo.ct_value(_need_kappa(binding), args[0])

    def dual(args, binding):
        kappa = _need_kappa(binding)
        x = args[0]
        v = _geo.ct_value(kappa, x.v)
        return Dual(v, (-kappa - v * v) * x.d if x.d != 0.0 else 0.0)

    return value, dual


def _s_pair():
    def value(args, binding):
        return _geo.s_value(_need_kappa(binding), args[0])

    def dual(args, binding):
        kappa = _need_kappa(binding)
        x = args[0]
        v = _geo.s_value(kappa, x.v)
        return Dual(v, _geo.s_value_dt(kappa, x.v) * x.d if x.d != 0.0 else 0.0)

    return value, dual


def _d_pair():
    def value(args, binding):
        return _geo.deficit_value(_need_kappa(binding), args[0])

    def dual(args, binding):
        kappa = _need_kappa(binding)
        x = args[0]
        v = _geo.deficit_value(kappa, x.v)
        return Dual(v, _geo.deficit_value_dt(kappa, x.v) * x.d if x.d != 0.0 else 0.0)

    return value, dual


def _pow_fn_value(args, binding):
    return _pow_value(args[0], args[1])


def _pow_fn_dual(args, binding):
    return _pow_dual(args[0], args[1])


_abs = _u1(abs, lambda x, v: math.copysign(1.0, x) if x != 0.0 else 0.0)
_sqrt = _u1(_sqrt_v, _sqrt_d)
_exp = _u1(_safe_exp, lambda x, v: v)
_log = _u1(_log_v, lambda x, v: 1.0 / x)
_sin = _u1(math.sin, lambda x, v: math.cos(x))
_cos = _u1(math.cos, lambda x, v: -math.sin(x))
_sinh = _u1(_sinh_v, lambda x, v: _cosh_v(x))
_cosh = _u1(_cosh_v, lambda x, v: _sinh_v(x))
_tanh = _u1(math.tanh, lambda x, v: 1.0 - v * v)
_coth = _u1(_coth_value, lambda x, v: 1.0 - v * v)

# name -> (arity, value implementation, dual implementation)
_BUILTINS = {
    "abs": (1, *_abs),
    "sqrt": (1, *_sqrt),
    "exp": (1, *_exp),
    "log": (1, *_log),
    "pow": (2, _pow_fn_value, _pow_fn_dual),
    "sin": (1, *_sin),
    "cos": (1, *_cos),
    "sinh": (1, *_sinh),
    "cosh": (1, *_cosh),
    "tanh": (1, *_tanh),
    "coth": (1, *_coth),
    "ct": (1, *_ct_pair()),
    "s": (1, *_s_pair()),
    "D": (1, *_d_pair()),
    "besselj": (2, _bj_value, _bj_dual),
    "besselratio": (2, _br_value, _br_dual),
    "hyp2f1": (4, _hyp_value, _hyp_dual),
    "gamma": (1, lambda args, binding: _sf.gamma(args[0]), _gamma_dual),
}

BUILTIN_ARITY = {name: spec[0] for name, spec in _BUILTINS.items()}

_KAPPA_BUILTINS = frozenset({"ct", "s", "D"})


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    span: tuple[int, int] = field(repr=False)


@dataclass(frozen=True)
class Num(Node):
    value: float = 0.0


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class Param(Node):
    name: str = ""


@dataclass(frozen=True)
class Neg(Node):
    operand: Node = None


@dataclass(frozen=True)
class Bin(Node):
    op: str = ""
    left: Node = None
    right: Node = None


@dataclass(frozen=True)
class Call(Node):
    name: str = ""
    args: tuple[Node, ...] = ()


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"""
    (?P<num>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[+\-*/^(),])
  | (?P<ws>\s+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "pos", "line", "col")

    def __init__(self, kind, text, pos, line, col):
        self.kind = kind
        self.text = text
        self.pos = pos
        self.line = line
        self.col = col


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(source):
        if m.lastgroup == "ws":
            line += m.group().count("\n")
            if "\n" in m.group():
                line_start = m.end() - (len(m.group()) - m.group().rfind("\n") - 1)
            continue
        col = m.start() - line_start + 1
        if m.lastgroup == "bad":
            raise ExprSyntaxError(f"unexpected character {m.group()!r}", line, col)
        tokens.append(_Token(m.lastgroup, m.group(), m.start(), line, col))
    tokens.append(_Token("eof", "", len(source), line, len(source) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, source: str, var: str):
        self.source = source
        self.var = var
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise ExprSyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}",
                                  tok.line, tok.col)
        return self.advance()

    def at_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in texts

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ExprSyntaxError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            node = Bin((node.span[0], rhs.span[1]), op, node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            rhs = self.factor()
            node = Bin((node.span[0], rhs.span[1]), op, node, rhs)
        return node

    def factor(self) -> Node:
        node = self.unary()
        if self.at_op("^"):
            self.advance()
            rhs = self.factor()  # right associative
            node = Bin((node.span[0], rhs.span[1]), "^", node, rhs)
        return node

    def unary(self) -> Node:
        if self.at_op("-"):
            tok = self.advance()
            inner = self.unary()
            return Neg((tok.pos, inner.span[1]), inner)
        return self.primary()

    def primary(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num((tok.pos, tok.pos + len(tok.text)), float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if self.at_op("("):
                return self.call(tok)
            if tok.text == self.var:
                return Var((tok.pos, tok.pos + len(tok.text)))
            if tok.text in _BUILTINS:
                raise ExprSyntaxError(f"builtin {tok.text!r} used without arguments",
                                      tok.line, tok.col)
            return Param((tok.pos, tok.pos + len(tok.text)), tok.text)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            closing = self.expect(")")
            return type(node)(**{**_node_fields(node), "span": (tok.pos, closing.pos + 1)})
        raise ExprSyntaxError(f"expected a number, name or '(', found {tok.text or 'end of input'!r}",
                              tok.line, tok.col)

    def call(self, name_tok: _Token) -> Node:
        name = name_tok.text
        if name not in _BUILTINS:
            raise ExprSyntaxError(f"unknown function {name!r}", name_tok.line, name_tok.col)
        arity = _BUILTINS[name][0]
        self.expect("(")
        args = [self.expr()]
        while self.at_op(","):
            self.advance()
            args.append(self.expr())
        closing = self.expect(")")
        if len(args) != arity:
            raise ExprSyntaxError(
                f"{name} takes {arity} argument{'s' if arity != 1 else ''}, got {len(args)}",
                name_tok.line, name_tok.col)
        return Call((name_tok.pos, closing.pos + 1), name, tuple(args))


def _node_fields(node: Node) -> dict:
    return {f: getattr(node, f) for f in node.__dataclass_fields__}


# ---------------------------------------------------------------------------
# evaluation


def _collect_params(node: Node, out: set[str]) -> None:
    if isinstance(node, Param):
        out.add(node.name)
    elif isinstance(node, Neg):
        _collect_params(node.operand, out)
    elif isinstance(node, Bin):
        _collect_params(node.left, out)
        _collect_params(node.right, out)
    elif isinstance(node, Call):
        if node.name in _KAPPA_BUILTINS:
            out.add("kappa")
        for a in node.args:
            _collect_params(a, out)


@dataclass(frozen=True)
class ScalarExpr:
    """Parsed, immutable expression over one variable and named parameters."""

    ast: Node
    source: str
    var: str
    params_required: frozenset[str]

    def eval(self, t: float, binding: ParamBinding | None = None) -> float:
        return _eval_value(self.ast, self, t, binding or {})

    def eval_d(self, t: float, binding: ParamBinding | None = None) -> tuple[float, float]:
        out = _eval_dual(self.ast, self, t, binding or {})
        return out.v, out.d

    def to_source(self) -> str:
        """Canonical fully parenthesized printout; re-parses to the same values."""
        return _print(self.ast, self.var)

    def __repr__(self):
        return f"ScalarExpr({self.source!r})"


def parse(source: str, var: str = "t") -> ScalarExpr:
    """Parse an expression; unknown identifiers become parameter references."""
    node = _Parser(source, var).parse()
    names: set[str] = set()
    _collect_params(node, names)
    return ScalarExpr(ast=node, source=source, var=var, params_required=frozenset(names))


def evaluate(e: ScalarExpr, t: float, binding: ParamBinding | None = None) -> float:
    return e.eval(t, binding)


def evaluate_d(e: ScalarExpr, t: float, binding: ParamBinding | None = None) -> tuple[float, float]:
    return e.eval_d(t, binding)


def _fragment(expr: ScalarExpr, node: Node) -> str:
    return expr.source[node.span[0]:node.span[1]]


def _rewrap(expr: ScalarExpr, node: Node, exc: Exception) -> EvalError:
    if isinstance(exc, EvalError) and exc.fragment:
        return exc
    kind = type(exc) if isinstance(exc, EvalError) else EvalError
    return kind(str(exc), _fragment(expr, node))


def _eval_value(node: Node, expr: ScalarExpr, t: float, binding: ParamBinding) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Param):
        try:
            return binding[node.name]
        except KeyError:
            raise UnboundParameterError(f"unbound parameter {node.name!r}") from None
    if isinstance(node, Neg):
        return -_eval_value(node.operand, expr, t, binding)
    if isinstance(node, Bin):
        a = _eval_value(node.left, expr, t, binding)
        b = _eval_value(node.right, expr, t, binding)
        try:
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if node.op == "/":
                if b == 0.0:
                    raise EvalError("division by zero")
                return a / b
            return _pow_value(a, b)
        except (EvalError, HardykitError, ArithmeticError) as exc:
            raise _rewrap(expr, node, exc) from None
    if isinstance(node, Call):
        args = [_eval_value(a, expr, t, binding) for a in node.args]
        try:
            return _BUILTINS[node.name][1](args, binding)
        except (EvalError, HardykitError, ArithmeticError) as exc:
            raise _rewrap(expr, node, exc) from None
    raise TypeError(f"unknown node {node!r}")  # pragma: no cover


def _eval_dual(node: Node, expr: ScalarExpr, t: float, binding: ParamBinding) -> Dual:
    if isinstance(node, Num):
        return Dual(node.value, 0.0)
    if isinstance(node, Var):
        return Dual(t, 1.0)
    if isinstance(node, Param):
        try:
            return Dual(binding[node.name], 0.0)
        except KeyError:
            raise UnboundParameterError(f"unbound parameter {node.name!r}") from None
    if isinstance(node, Neg):
        inner = _eval_dual(node.operand, expr, t, binding)
        return Dual(-inner.v, -inner.d)
    if isinstance(node, Bin):
        a = _eval_dual(node.left, expr, t, binding)
        b = _eval_dual(node.right, expr, t, binding)
        try:
            if node.op == "+":
                return Dual(a.v + b.v, a.d + b.d)
            if node.op == "-":
                return Dual(a.v - b.v, a.d - b.d)
            if node.op == "*":
                return _dual_mul(a, b)
            if node.op == "/":
                return _dual_div(a, b)
            return _pow_dual(a, b)
        except (EvalError, HardykitError, ArithmeticError) as exc:
            raise _rewrap(expr, node, exc) from None
    if isinstance(node, Call):
        args = [_eval_dual(a, expr, t, binding) for a in node.args]
        try:
            return _BUILTINS[node.name][2](args, binding)
        except (EvalError, HardykitError, ArithmeticError) as exc:
            raise _rewrap(expr, node, exc) from None
    raise TypeError(f"unknown node {node!r}")  # pragma: no cover


def _print(node: Node, var: str) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return var
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Neg):
        return f"(-{_print(node.operand, var)})"
    if isinstance(node, Bin):
        return f"({_print(node.left, var)} {node.op} {_print(node.right, var)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(_print(a, var) for a in node.args)})"
    raise TypeError(f"unknown node {node!r}")  # pragma: no cover
