"""Text syntax for fields, field elements, polynomials and series.

Fields::

    GF(p)   GF(p^e)   GF(p^e; m=[c0, c1, ..., ce])

Expressions are built from integer literals (each must be < p), the field
generator ``w``, the variable (``t`` by default), ``+ - * / ^`` and
parentheses; juxtaposition multiplies, so ``2t^3`` works.  Exponents may be
negative.  Printing goes the other way and round-trips through the parser.
"""

from __future__ import annotations

import re

import sympy

from .errors import CoefficientOutOfField, ParseError
from .field import GF, FieldCtx
from .poly import LPoly

_FIELD_RE = re.compile(
    r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*m\s*=\s*\[([^\]]*)\]\s*)?\)\s*$"
)


def parse_field(text: str) -> FieldCtx:
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse field {text!r}")
    p = int(m.group(1))
    if not sympy.isprime(p):
        raise ParseError(f"{p} is not prime; write prime powers as GF(p^e)")
    e = int(m.group(2)) if m.group(2) else 1
    if e < 1:
        raise ParseError("extension degree must be positive")
    modulus = None
    if m.group(3) is not None:
        try:
            modulus = tuple(int(c) for c in m.group(3).split(",") if c.strip())
        except ValueError as exc:
            raise ParseError(f"bad modulus list in {text!r}") from exc
    return GF(p, e, modulus)


def format_field(ctx: FieldCtx) -> str:
    if ctx.e == 1 and ctx.modulus == (0, 1):
        return f"GF({ctx.p})"
    if ctx == GF(ctx.p, ctx.e):
        return f"GF({ctx.p}^{ctx.e})"
    return f"GF({ctx.p}^{ctx.e}; m=[{', '.join(map(str, ctx.modulus))}])"


def format_elem(ctx: FieldCtx, n: int) -> str:
    if ctx.e == 1:
        return str(n)
    parts = []
    for i, c in reversed(list(enumerate(ctx.digits(n)))):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "w" if i == 1 else f"w^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) if parts else "0"


def format_poly(f: LPoly, var: str = "t") -> str:
    if not f.terms:
        return "0"
    ctx = f.ctx
    parts = []
    for k in sorted(f.terms, reverse=True):
        c = format_elem(ctx, f.terms[k])
        if k == 0:
            parts.append(c if "+" not in c else f"({c})")
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == "1":
            parts.append(mono)
        elif "+" in c:
            parts.append(f"({c})*{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


# -- expression parser --------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Frac:
    """num/den with LPoly parts; den is never zero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __add__(self, o):
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if o.num.is_zero():
            raise ParseError("division by zero")
        return _Frac(self.num * o.den, self.den * o.num)

    def __neg__(self):
        return _Frac(-self.num, self.den)

    def power(self, k):
        if k >= 0:
            return _Frac(self.num**k, self.den**k)
        if self.num.is_zero():
            raise ParseError("zero raised to a negative power")
        return _Frac(self.den ** (-k), self.num ** (-k))


class _Parser:
    def __init__(self, text, ctx, var):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.var = var
        self.one = LPoly.constant(ctx, 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym):
        kind, val = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}, got {val!r}")

    def const(self, poly):
        return _Frac(poly, self.one)

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while True:
            kind, tok = self.peek()
            if kind == "sym" and tok in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if tok == "+" else val - rhs
            else:
                return val

    def _starts_factor(self):
        kind, tok = self.peek()
        return kind in ("num", "name") or (kind == "sym" and tok == "(")

    def term(self):
        val = self.unary()
        while True:
            kind, tok = self.peek()
            if kind == "sym" and tok in "*/":
                self.take()
                rhs = self.unary()
                val = val * rhs if tok == "*" else val / rhs
            elif self._starts_factor():
                val = val * self.power()
            else:
                return val

    def unary(self):
        kind, tok = self.peek()
        if kind == "sym" and tok in "+-":
            self.take()
            val = self.unary()
            return -val if tok == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        kind, tok = self.peek()
        if kind == "sym" and tok == "^":
            self.take()
            sign = 1
            kind, tok = self.peek()
            if kind == "sym" and tok in "+-":
                self.take()
                sign = -1 if tok == "-" else 1
            kind, tok = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            return base.power(sign * tok)
        return base

    def atom(self):
        kind, tok = self.take()
        ctx = self.ctx
        if kind == "num":
            if tok >= ctx.p:
                raise CoefficientOutOfField(f"literal {tok} is not a residue mod {ctx.p}")
            return self.const(LPoly.constant(ctx, tok))
        if kind == "name":
            if tok == self.var:
                return self.const(LPoly.t(ctx))
            if tok == "w":
                if ctx.e == 1:
                    raise CoefficientOutOfField(f"w is not defined over the prime field {ctx!r}")
                return self.const(LPoly.constant(ctx, ctx.w))
            raise ParseError(f"unknown symbol {tok!r}")
        if kind == "sym" and tok == "(":
            val = self.expr()
            self.expect(")")
            return val
        raise ParseError(f"unexpected token {tok!r}")


def _parse_frac(text, ctx, var):
    return _Parser(text, ctx, var).parse()


def parse_expr(text: str, ctx: FieldCtx, var: str = "t"):
    """An LPoly when the denominator is a monomial, else a RationalFn."""
    from .perfection import RationalFn

    fr = _parse_frac(text, ctx, var)
    den = fr.den
    if len(den.terms) == 1:
        return fr.num * den ** (-1)
    return RationalFn(fr.num, den)


def parse_poly(text: str, ctx: FieldCtx, var: str = "t") -> LPoly:
    val = parse_expr(text, ctx, var)
    if not isinstance(val, LPoly):
        raise ParseError(f"{text!r} is not a Laurent polynomial")
    return val


def parse_rational(text: str, ctx: FieldCtx, var: str = "t"):
    """Always a RationalFn (polynomial numerator and denominator)."""
    from .perfection import RationalFn

    fr = _parse_frac(text, ctx, var)
    num, den = fr.num, fr.den
    low = min(num.valuation(), den.valuation()) if num else den.valuation()
    if low < 0:
        num, den = num.shift(-low), den.shift(-low)
    return RationalFn(num, den)


_BIG_O_RE = re.compile(r"(?:^|\+)\s*O\(\s*\w+\s*(?:\^\s*(-?\d+)\s*)?\)\s*$")


def parse_series(text: str, ctx: FieldCtx, var: str = "t", default_prec: int | None = None):
    """A Laurent polynomial, optionally followed by ``+ O(t^k)``."""
    from .laurent import LaurentSeries

    prec = default_prec
    m = _BIG_O_RE.search(text)
    if m:
        prec = int(m.group(1)) if m.group(1) is not None else 1
        text = text[: m.start()]
    poly = parse_poly(text, ctx, var) if text.strip() else LPoly._raw(ctx, {})
    return LaurentSeries.from_lpoly(poly, prec)
