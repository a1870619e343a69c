"""Sparse Laurent polynomials over a finite field.

:class:`LPoly` stores ``{exponent: encoded coefficient}`` with no zero
entries, so the zero polynomial is the empty map.  Exponents may be negative,
which gives the ring F_q[t, 1/t].

Euclidean algorithms (gcd, radical, root finding) need honest polynomials and
run on dense coefficient lists; see the ``_d*`` helpers near the bottom.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    ConstantInput,
    CtxMismatch,
    ExponentCapExceeded,
    NegativeExponentInOuter,
    ZeroAtPole,
    ZeroPolynomial,
)
from .field import Embedding, FieldCtx, FieldElem, embedding

EXPONENT_CAP = 10**6


def _check_cap(exponent: int):
    if abs(exponent) > EXPONENT_CAP:
        raise ExponentCapExceeded(f"exponent {exponent} exceeds cap {EXPONENT_CAP}")


class LPoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: Mapping[int, FieldElem | int] | None = None):
        """Plain ints among the coefficients are read as integers mod p."""
        self.ctx = ctx
        out = {}
        if terms:
            for k, c in terms.items():
                if isinstance(c, FieldElem):
                    ctx.check(c)
                    n = c.n
                else:
                    n = int(c) % ctx.p
                if n:
                    out[int(k)] = n
        self.terms = out

    @classmethod
    def _raw(cls, ctx: FieldCtx, terms: dict[int, int]) -> "LPoly":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    @classmethod
    def t(cls, ctx: FieldCtx) -> "LPoly":
        return cls._raw(ctx, {1: 1})

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int, c: FieldElem | int = 1) -> "LPoly":
        return cls(ctx, {k: c})

    @classmethod
    def constant(cls, ctx: FieldCtx, c: FieldElem | int) -> "LPoly":
        return cls(ctx, {0: c})

    @classmethod
    def from_dense(cls, ctx: FieldCtx, coeffs) -> "LPoly":
        """Encoded coefficients, low-to-high."""
        return cls._raw(ctx, {i: c for i, c in enumerate(coeffs) if c})

    # -- inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def is_polynomial(self) -> bool:
        return all(k >= 0 for k in self.terms)

    def degree(self):
        """Largest exponent; -inf for zero."""
        return max(self.terms) if self.terms else -math.inf

    def valuation(self):
        """Smallest exponent; +inf for zero."""
        return min(self.terms) if self.terms else math.inf

    def coeff(self, k: int) -> FieldElem:
        return FieldElem(self.ctx, self.terms.get(k, 0))

    def leading(self) -> FieldElem:
        return self.coeff(self.degree())

    def items(self):
        """(exponent, FieldElem) pairs in increasing exponent order."""
        return [(k, FieldElem(self.ctx, self.terms[k])) for k in sorted(self.terms)]

    def dense(self) -> list[int]:
        if not self.is_polynomial():
            raise NegativeExponentInOuter("dense form needs non-negative exponents")
        if not self.terms:
            return []
        out = [0] * (max(self.terms) + 1)
        for k, c in self.terms.items():
            out[k] = c
        return out

    # -- ring structure -----------------------------------------------------
    def _coerce(self, other) -> "LPoly":
        if isinstance(other, LPoly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (FieldElem, int)):
            return LPoly(self.ctx, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.ctx.add
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = add(out.get(k, 0), c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LPoly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return LPoly._raw(self.ctx, {k: neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        out: dict[int, int] = {}
        if ctx.e == 1:
            # prime field: accumulate plain integers, reduce once
            get = out.get
            for i, a in self.terms.items():
                for j, b in other.terms.items():
                    k = i + j
                    out[k] = get(k, 0) + a * b
            p = ctx.p
            return LPoly._raw(ctx, {k: v % p for k, v in out.items() if v % p})
        add, mul = ctx.add, ctx.mul
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                s = add(out.get(k, 0), mul(a, b))
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LPoly._raw(ctx, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LPoly":
        if c == 0:
            return LPoly._raw(self.ctx, {})
        mul = self.ctx.mul
        return LPoly._raw(self.ctx, {k: mul(v, c) for k, v in self.terms.items()})

    def shift(self, s: int) -> "LPoly":
        """Multiply by t^s."""
        return LPoly._raw(self.ctx, {k + s: c for k, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers exist only for monomials")
            (k, c), = self.terms.items()
            _check_cap(k * n)
            return LPoly._raw(self.ctx, {k * n: self.ctx.pow(c, n)})
        if n == 0:
            return LPoly._raw(self.ctx, {0: 1})
        if self.terms:
            _check_cap(max(abs(k) for k in self.terms) * n)
        # n = sum n_i p^i, and u^(p^i) is a cheap relabelling in characteristic p
        p = self.ctx.p
        result = LPoly._raw(self.ctx, {0: 1})
        base = self
        while n:
            n, r = divmod(n, p)
            for _ in range(r):
                result = result * base
            if n:
                base = base.frobenius()
        return result

    def frobenius(self, k: int = 1) -> "LPoly":
        """self^(p^k)."""
        if k == 0:
            return self
        pk = self.ctx.p**k
        if self.terms:
            _check_cap(max(abs(e) for e in self.terms) * pk)
        frob = self.ctx.frob
        return LPoly._raw(self.ctx, {e * pk: frob(c, k) for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, LPoly):
            return self.terms == other.terms and self.ctx == other.ctx
        if isinstance(other, (int, FieldElem)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LPoly({self}, {self.ctx!r})"

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)

    # -- calculus and substitution --------------------------------------------
    def derivative(self) -> "LPoly":
        ctx = self.ctx
        p = ctx.p
        out = {}
        for k, c in self.terms.items():
            m = k % p
            if m:
                out[k - 1] = ctx.mul(c, m)
        return LPoly._raw(ctx, out)

    def compose(self, f: "LPoly") -> "LPoly":
        """self(f): substitute f for the variable."""
        f = self._coerce(f)
        if not self.is_polynomial():
            raise NegativeExponentInOuter("outer polynomial has negative exponents")
        if not self.terms:
            return LPoly._raw(self.ctx, {})
        exps = sorted(self.terms, reverse=True)
        acc = LPoly._raw(self.ctx, {0: self.terms[exps[0]]})
        for prev, k in zip(exps, exps[1:]):
            acc = acc * f ** (prev - k) + LPoly._raw(self.ctx, {0: self.terms[k]})
        return acc * f ** exps[-1]

    def evaluate(self, a: FieldElem, emb: Embedding | None = None) -> FieldElem:
        """Value at a, after pushing coefficients along ``emb`` into a's field."""
        dst = a.ctx
        if emb is None:
            if dst != self.ctx:
                emb = embedding(self.ctx, dst)
        elif emb.src != self.ctx or emb.dst != dst:
            raise CtxMismatch("embedding does not match polynomial and point")
        return FieldElem(dst, eval_int(self, a.n, dst, emb))

    def map_coeffs(self, emb: Embedding) -> "LPoly":
        if emb.src != self.ctx:
            raise CtxMismatch("embedding source differs from coefficient field")
        m = emb.map_int
        return LPoly._raw(emb.dst, {k: m(c) for k, c in self.terms.items()})

    def pth_root(self) -> "LPoly | None":
        p = self.ctx.p
        if any(k % p for k in self.terms):
            return None
        proot = self.ctx.proot
        return LPoly._raw(self.ctx, {k // p: proot(c) for k, c in self.terms.items()})

    def frobenius_reduce(self) -> "FrobeniusForm":
        if self.is_constant():
            raise ConstantInput("constant input has no Frobenius normal form")
        core, a = self, 0
        while True:
            r = core.pth_root()
            if r is None:
                return FrobeniusForm(core, a)
            core, a = r, a + 1


def eval_int(f: LPoly, x: int, dst: FieldCtx, emb: Embedding | None = None) -> int:
    """Evaluate at the encoded element x of dst (coefficients mapped by emb)."""
    neg = [k for k in f.terms if k < 0]
    if neg and x == 0:
        raise ZeroAtPole("polynomial with negative exponents evaluated at 0")
    cmap = emb.map_int if emb is not None else (lambda c: c)
    add, mul, pw = dst.add, dst.mul, dst.pow
    acc = 0
    for k, c in f.terms.items():
        acc = add(acc, mul(cmap(c), pw(x, k)))
    return acc


@dataclass(frozen=True)
class FrobeniusForm:
    """original == core^(p^a) with core not a p-th power."""

    core: LPoly
    a: int

    def expand(self) -> LPoly:
        return self.core.frobenius(self.a)


# -- free-function interface -----------------------------------------------

def poly_arith(op: str, u: LPoly, v) -> LPoly:
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "pow":
        if v < 0:
            raise ValueError("pow exponent must be >= 0")
        return u**v
    raise ValueError(f"unknown operation {op!r}")


def compose(u: LPoly, f: LPoly) -> LPoly:
    return u.compose(f)


def derivative(f: LPoly) -> LPoly:
    return f.derivative()


def evaluate(f: LPoly, a: FieldElem, emb: Embedding | None = None) -> FieldElem:
    return f.evaluate(a, emb)


def pth_root(f: LPoly) -> LPoly | None:
    return f.pth_root()


def frobenius_reduce(f: LPoly) -> FrobeniusForm:
    return f.frobenius_reduce()


def radical(f: LPoly) -> LPoly:
    """Monic product of the distinct irreducible factors of a polynomial."""
    if f.is_zero():
        raise ZeroPolynomial("radical of zero")
    return LPoly.from_dense(f.ctx, _dradical(f.ctx, f.dense()))


def squarefree_root_count(f: LPoly) -> int:
    """Number of distinct roots of f in the algebraic closure."""
    if f.is_zero():
        raise ZeroPolynomial("zero has infinitely many roots")
    if not f.is_polynomial():
        raise NegativeExponentInOuter("root count needs a polynomial")
    return len(_dradical(f.ctx, f.dense())) - 1


def poly_gcd(a: LPoly, b: LPoly) -> LPoly:
    """Monic gcd of two polynomials (0 if both vanish)."""
    a._coerce(b)
    return LPoly.from_dense(a.ctx, _dgcd(a.ctx, a.dense(), b.dense()))


def poly_divmod(a: LPoly, b: LPoly) -> tuple[LPoly, LPoly]:
    a._coerce(b)
    quo, rem = _ddivmod(a.ctx, a.dense(), b.dense())
    return LPoly.from_dense(a.ctx, quo), LPoly.from_dense(a.ctx, rem)


def divides_power(a: LPoly, b: LPoly) -> bool:
    """Whether every root of a is a root of b, i.e. rad(a) | b."""
    ctx = a.ctx
    rad = _dradical(ctx, a.dense())
    return not _dmod(ctx, b.dense(), rad)


def find_root(f: LPoly, rng: random.Random | None = None):
    """Some root of a non-constant polynomial, in the smallest extension
    GF(q^j) containing one.  Returns ``(root, embedding ctx -> GF(q^j))``."""
    ctx = f.ctx
    if f.degree() < 1 or not f.is_polynomial():
        raise ValueError("need a non-constant polynomial")
    rng = rng or random.Random(0)
    m = _dradical(ctx, f.dense())
    # distinct-degree search for the smallest field of definition of a root
    x = [0, 1]
    h = x
    j = 0
    while True:
        j += 1
        h = _dpowmod(ctx, h, ctx.q, m)
        g = _dgcd(ctx, m, _dsub(ctx, h, x))
        if len(g) > 1:
            break
    big = ctx.extension(j) if j > 1 else ctx
    emb = embedding(ctx, big)
    g_big = [emb.map_int(c) for c in g]
    if j > 1:
        xq = _dpowmod(big, x, big.q, g_big)
        g_big = _dgcd(big, g_big, _dsub(big, xq, x))
    lin = _split_to_linear(big, g_big, rng)
    return FieldElem(big, big.neg(lin[0])), emb


# -- dense helpers: encoded coefficients, low-to-high --------------------------

def _dtrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dadd(ctx, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = ctx.add
    for i, c in enumerate(b):
        out[i] = add(out[i], c)
    return _dtrim(out)


def _dsub(ctx, a, b):
    neg = ctx.neg
    return _dadd(ctx, a, [neg(c) for c in b])


def _dmul(ctx, a, b):
    if not a or not b:
        return []
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _dtrim(out)


def _ddivmod(ctx, a, b):
    b = _dtrim(list(b))
    if not b:
        raise ZeroPolynomial("division by the zero polynomial")
    a = _dtrim(list(a))
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    inv_lead = ctx.inv(b[-1])
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = mul(c, inv_lead)
            quo[i - db] = c
            nc = neg(c)
            base = i - db
            for j, bj in enumerate(b):
                if bj:
                    a[base + j] = add(a[base + j], mul(nc, bj))
    return _dtrim(quo), _dtrim(a[:db])


def _dmod(ctx, a, b):
    return _ddivmod(ctx, a, b)[1]


def _dmonic(ctx, a):
    if not a:
        return a
    inv = ctx.inv(a[-1])
    mul = ctx.mul
    return [mul(c, inv) for c in a]


def _dgcd(ctx, a, b):
    a = _dtrim(list(a))
    b = _dtrim(list(b))
    while b:
        a, b = b, _dmod(ctx, a, b)
    return _dmonic(ctx, a)


def _dderiv(ctx, a):
    p = ctx.p
    return _dtrim([ctx.mul(c, i % p) for i, c in enumerate(a)][1:])


def _dpth_root(ctx, a):
    p = ctx.p
    proot = ctx.proot
    return [proot(a[i]) for i in range(0, len(a), p)]


def _dradical(ctx, a):
    """Monic radical of a non-zero polynomial (dense)."""
    a = _dtrim(list(a))
    if not a:
        raise ZeroPolynomial("radical of zero")
    if len(a) == 1:
        return [1]
    da = _dderiv(ctx, a)
    if not da:
        return _dradical(ctx, _dpth_root(ctx, a))
    c = _dgcd(ctx, a, da)
    w = _ddivmod(ctx, a, c)[0]  # primes whose multiplicity is prime to p
    rest = c
    while True:
        g = _dgcd(ctx, rest, w)
        if len(g) == 1:
            break
        rest = _ddivmod(ctx, rest, g)[0]
    # every prime left in rest has multiplicity divisible by p
    if len(rest) == 1:
        return _dmonic(ctx, w)
    return _dmonic(ctx, _dmul(ctx, w, _dradical(ctx, _dpth_root(ctx, rest))))


def _dmulmod(ctx, a, b, m):
    return _dmod(ctx, _dmul(ctx, a, b), m)


def _dpowmod(ctx, a, n, m):
    result = [1]
    base = _dmod(ctx, a, m)
    while n:
        if n & 1:
            result = _dmulmod(ctx, result, base, m)
        n >>= 1
        if n:
            base = _dmulmod(ctx, base, base, m)
    return _dmod(ctx, result, m)


def _split_to_linear(ctx, h, rng):
    """A monic linear factor of h, which is a product of distinct linear factors."""
    h = _dmonic(ctx, h)
    while len(h) > 2:
        delta = rng.randrange(ctx.q)
        if ctx.p == 2:
            u = [0, delta] if delta else [1]
            s = list(u)
            for _ in range(ctx.e - 1):
                u = _dmulmod(ctx, u, u, h)
                s = _dadd(ctx, s, u)
            g = _dgcd(ctx, h, s)
        else:
            u = _dpowmod(ctx, [delta, 1], (ctx.q - 1) // 2, h)
            g = _dgcd(ctx, h, _dsub(ctx, u, [1]))
        if 1 < len(g) < len(h):
            h = g if len(g) <= len(h) // 2 + 1 else _dmonic(ctx, _ddivmod(ctx, h, g)[0])
    return h
