"""Expression language for continuous piecewise-affine functions.

Grammar (whitespace-insensitive, rationals as ``p/q`` or decimals)::

    expr   := product ('+' product)*
    product:= signed ('*' signed)*
    signed := '-' signed | atom
    atom   := 'affine' '(' '[' num (',' num)* ']' ',' num ')'
            | 'relu' '(' expr ')'
            | 'max' '(' expr ',' expr ')'
            | 'min' '(' expr ',' expr ')'
            | '(' expr ')'
            | num                       -- only as a factor of '*'

Unary minus binds tighter than '*', which binds tighter than '+'.  At most one
factor of a product may be a function; the rest must be scalar literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotFlat, ParseError
from .exact import dot, is_zero, primitive_direction, rat, rat_str, vec, vsub
from .network import Breakline


@dataclass(frozen=True)
class Affine:
    coeffs: tuple[Fraction, ...]
    const: Fraction


@dataclass(frozen=True)
class Relu:
    child: "PWAExpr"


@dataclass(frozen=True)
class Max:
    left: "PWAExpr"
    right: "PWAExpr"


@dataclass(frozen=True)
class Min:
    left: "PWAExpr"
    right: "PWAExpr"


@dataclass(frozen=True)
class Sum:
    children: tuple["PWAExpr", ...]


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    child: "PWAExpr"


@dataclass(frozen=True)
class Neg:
    child: "PWAExpr"


PWAExpr = Affine | Relu | Max | Min | Sum | Scale | Neg


@dataclass(frozen=True)
class PWASpec:
    expr: PWAExpr
    breaklines: tuple[Breakline, ...]


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?(?:/\d+)?)|(affine|relu|max|min)|([()\[\],+*-]))")


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0  # 0-based offset into text

    def peek(self):
        """(kind, value, 1-based position) of the next token; kind None at end."""
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            rest = self.text[self.pos :].lstrip()
            at = len(self.text) - len(rest) + 1
            if rest:
                raise ParseError(at, {"a token"}, rest[0])
            return None, None, at
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            return "num", m.group(1), start + 1
        if m.group(2):
            return "name", m.group(2), start + 1
        return m.group(3), m.group(3), start + 1

    def next(self):
        tok = self.peek()
        if tok[0] is not None:
            m = _TOKEN.match(self.text, self.pos)
            self.pos = m.end()
        return tok

    def expect(self, kind, what=None):
        k, v, at = self.next()
        if k != kind:
            raise ParseError(at, {what or repr(kind)}, v)
        return v


def parse_pwa(text: str) -> PWAExpr:
    """Parse an expression, raising ParseError with a 1-based position."""
    lx = _Lexer(text)
    expr = _parse_sum(lx)
    k, v, at = lx.peek()
    if k is not None:
        raise ParseError(at, {"'+'", "end of input"}, v)
    return expr


def _parse_sum(lx):
    parts = [_parse_product(lx)]
    while lx.peek()[0] == "+":
        lx.next()
        parts.append(_parse_product(lx))
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))


def _parse_product(lx):
    items = [_parse_signed(lx)]
    while lx.peek()[0] == "*":
        lx.next()
        items.append(_parse_signed(lx))
    coeff = Fraction(1)
    exprs = []
    for item, at in items:
        if isinstance(item, Fraction):
            coeff *= item
        else:
            exprs.append((item, at))
    if not exprs:
        raise ParseError(items[0][1], {"a function expression (bare scalars need '* expr')"})
    if len(exprs) > 1:
        raise ParseError(exprs[1][1], {"a scalar factor (functions cannot be multiplied)"})
    expr = exprs[0][0]
    if coeff != 1:
        expr = Scale(coeff, expr)
    return expr


def _parse_signed(lx):
    """Returns (Fraction | expr, 1-based position)."""
    k, v, at = lx.peek()
    if k == "-":
        lx.next()
        inner, _ = _parse_signed(lx)
        if isinstance(inner, Fraction):
            return -inner, at
        return Neg(inner), at
    return _parse_atom(lx)


def _parse_number(lx):
    """Rational literal with an optional leading minus."""
    neg = False
    while lx.peek()[0] == "-":
        lx.next()
        neg = not neg
    value = Fraction(lx.expect("num", "a rational"))
    return -value if neg else value


def _parse_atom(lx):
    k, v, at = lx.next()
    if k == "num":
        return Fraction(v), at
    if k == "(":
        expr = _parse_sum(lx)
        lx.expect(")", "')'")
        return expr, at
    if k == "name":
        lx.expect("(", "'('")
        if v == "affine":
            lx.expect("[", "'['")
            coeffs = [_parse_number(lx)]
            while lx.peek()[0] == ",":
                lx.next()
                coeffs.append(_parse_number(lx))
            lx.expect("]", "']'")
            lx.expect(",", "','")
            const = _parse_number(lx)
            lx.expect(")", "')'")
            return Affine(tuple(coeffs), const), at
        if v == "relu":
            child = _parse_sum(lx)
            lx.expect(")", "')'")
            return Relu(child), at
        left = _parse_sum(lx)
        lx.expect(",", "','")
        right = _parse_sum(lx)
        lx.expect(")", "')'")
        return (Max if v == "max" else Min)(left, right), at
    raise ParseError(
        at, {"'affine'", "'relu'", "'max'", "'min'", "'('", "'-'", "a rational"}, v
    )


def pretty(e: PWAExpr) -> str:
    """Grammar text for an expression; parse(pretty(e)) == e."""
    if isinstance(e, Affine):
        return f"affine([{', '.join(rat_str(c) for c in e.coeffs)}], {rat_str(e.const)})"
    if isinstance(e, Relu):
        return f"relu({pretty(e.child)})"
    if isinstance(e, Max):
        return f"max({pretty(e.left)}, {pretty(e.right)})"
    if isinstance(e, Min):
        return f"min({pretty(e.left)}, {pretty(e.right)})"
    if isinstance(e, Sum):
        return " + ".join(
            f"({pretty(c)})" if isinstance(c, Sum) else pretty(c) for c in e.children
        )
    if isinstance(e, Scale):
        child = pretty(e.child)
        if isinstance(e.child, Sum):
            child = f"({child})"
        return f"{rat_str(e.factor)} * {child}"
    if isinstance(e, Neg):
        child = pretty(e.child)
        if isinstance(e.child, (Sum, Scale)):
            child = f"({child})"
        return f"-{child}"
    raise TypeError(f"not a PWA expression: {e!r}")


def expr_dim(e: PWAExpr) -> int:
    """Ambient dimension shared by all Affine leaves."""
    dims = set()

    def walk(node):
        if isinstance(node, Affine):
            dims.add(len(node.coeffs))
        elif isinstance(node, (Relu, Scale, Neg)):
            walk(node.child)
        elif isinstance(node, (Max, Min)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Sum):
            for c in node.children:
                walk(c)

    walk(e)
    if len(dims) != 1:
        raise DimensionMismatch(f"affine leaves disagree on dimension: {sorted(dims)}")
    return dims.pop()


def eval_pwa(e: PWAExpr, x) -> Fraction:
    x = vec(x)
    if isinstance(e, Affine):
        if len(e.coeffs) != len(x):
            raise DimensionMismatch(f"point has length {len(x)}, leaf expects {len(e.coeffs)}")
        return dot(e.coeffs, x) + e.const
    if isinstance(e, Relu):
        return max(eval_pwa(e.child, x), Fraction(0))
    if isinstance(e, Max):
        return max(eval_pwa(e.left, x), eval_pwa(e.right, x))
    if isinstance(e, Min):
        return min(eval_pwa(e.left, x), eval_pwa(e.right, x))
    if isinstance(e, Sum):
        return sum(eval_pwa(c, x) for c in e.children)
    if isinstance(e, Scale):
        return e.factor * eval_pwa(e.child, x)
    if isinstance(e, Neg):
        return -eval_pwa(e.child, x)
    raise TypeError(f"not a PWA expression: {e!r}")


def _linearize(e):
    """(gradient, const) when the subtree is affine, else None."""
    if isinstance(e, Affine):
        return vec(e.coeffs), e.const
    if isinstance(e, Neg):
        g = _linearize(e.child)
        return None if g is None else (tuple(-c for c in g[0]), -g[1])
    if isinstance(e, Scale):
        g = _linearize(e.child)
        return None if g is None else (tuple(e.factor * c for c in g[0]), e.factor * g[1])
    if isinstance(e, Sum):
        parts = [_linearize(c) for c in e.children]
        if any(p is None for p in parts):
            return None
        grad = parts[0][0]
        const = parts[0][1]
        for g, c in parts[1:]:
            grad = tuple(a + b for a, b in zip(grad, g))
            const += c
        return grad, const
    return None


def flat_breaklines(e: PWAExpr) -> list[Breakline]:
    """Candidate breaklines of a flat expression, deduplicated and primitive.

    Flat means every Relu argument and every Max/Min argument difference is
    affine after distributing Sum/Scale/Neg; otherwise NotFlat is raised and
    the caller must declare the breaklines explicitly.
    """
    out = []
    seen = set()

    def add(grad, const):
        if is_zero(grad):
            return  # constant argument, no breakline
        d, s = primitive_direction(grad)
        bl = Breakline(d, -const / s)
        if bl not in seen:
            seen.add(bl)
            out.append(bl)

    def walk(node):
        if isinstance(node, Affine):
            return
        if isinstance(node, (Scale, Neg)):
            walk(node.child)
            return
        if isinstance(node, Sum):
            for c in node.children:
                walk(c)
            return
        if isinstance(node, Relu):
            lin = _linearize(node.child)
            if lin is None:
                raise NotFlat("relu argument is not affine")
            add(*lin)
            return
        if isinstance(node, (Max, Min)):
            left = _linearize(node.left)
            right = _linearize(node.right)
            if left is None or right is None:
                raise NotFlat("max/min argument is not affine")
            add(vsub(left[0], right[0]), left[1] - right[1])
            return
        raise TypeError(f"not a PWA expression: {node!r}")

    walk(e)
    return out
