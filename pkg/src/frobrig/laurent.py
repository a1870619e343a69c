"""Truncated Laurent series over a finite field, at the point t = 0.

A :class:`LaurentSeries` is a finite set of known coefficients plus an
absolute precision ``prec``: everything at exponent >= prec is unknown.
``prec=None`` means the series is an exact Laurent polynomial.  Valuations are
exact whenever the lowest term lies inside the window; a series with no known
non-zero coefficient is "zero to precision" and has valuation +inf.

The second half carries the local Artin-Schreier analysis: solvability of
h - h^p = z in K((t)), and a probe that tabulates the valuations controlling
whether f^n - g^n can be of that form for growing n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .artin_schreier import wp_preimage_oracle
from .errors import CtxMismatch, DivideByZeroSeries, PrecisionExhausted
from .field import FieldCtx, FieldElem
from .poly import LPoly

DEFAULT_PRECISION = 64


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("ctx", "terms", "prec")

    def __init__(self, ctx: FieldCtx, terms=None, prec: int | None = None):
        self.ctx = ctx
        self.prec = prec
        out = {}
        for k, c in (terms or {}).items():
            n = c.n if isinstance(c, FieldElem) else int(c) % ctx.p
            if n and (prec is None or k < prec):
                out[int(k)] = n
        self.terms = out

    @classmethod
    def _raw(cls, ctx, terms, prec):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj.prec = prec
        return obj

    @classmethod
    def from_lpoly(cls, f: LPoly, prec: int | None = None) -> "LaurentSeries":
        terms = dict(f.terms) if prec is None else {k: c for k, c in f.terms.items() if k < prec}
        return cls._raw(f.ctx, terms, prec)

    @classmethod
    def t(cls, ctx: FieldCtx) -> "LaurentSeries":
        return cls._raw(ctx, {1: 1}, None)

    @classmethod
    def constant(cls, ctx: FieldCtx, c) -> "LaurentSeries":
        return cls(ctx, {0: c})

    # -- inspection ---------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec is None

    def valuation(self):
        return min(self.terms) if self.terms else math.inf

    val = property(valuation)

    def is_zero(self) -> bool:
        """Zero as far as the window can tell."""
        return not self.terms

    def _vlow(self):
        """A lower bound for the true valuation."""
        if self.terms:
            return min(self.terms)
        return math.inf if self.prec is None else self.prec

    def coeff(self, k: int) -> FieldElem:
        if self.prec is not None and k >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{k} is beyond precision {self.prec}")
        return FieldElem(self.ctx, self.terms.get(k, 0))

    def to_lpoly(self) -> LPoly:
        """The known coefficients as a Laurent polynomial."""
        return LPoly._raw(self.ctx, dict(self.terms))

    def truncate(self, prec: int) -> "LaurentSeries":
        prec = _min_prec(self.prec, prec)
        return LaurentSeries._raw(self.ctx, {k: c for k, c in self.terms.items() if k < prec}, prec)

    def principal_part(self) -> LPoly:
        return LPoly._raw(self.ctx, {k: c for k, c in self.terms.items() if k < 0})

    def is_constant(self) -> bool:
        """True when every known coefficient off exponent 0 vanishes."""
        return all(k == 0 for k in self.terms)

    # -- ring structure -----------------------------------------------------
    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, LPoly):
            if other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
            return LaurentSeries.from_lpoly(other)
        if isinstance(other, (int, FieldElem)):
            return LaurentSeries(self.ctx, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min_prec(self.prec, other.prec)
        add = self.ctx.add
        out = {k: c for k, c in self.terms.items() if prec is None or k < prec}
        for k, c in other.terms.items():
            if prec is not None and k >= prec:
                continue
            s = add(out.get(k, 0), c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentSeries._raw(self.ctx, out, prec)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return LaurentSeries._raw(self.ctx, {k: neg(c) for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.prec is None and other.prec is None:
            prec = None
        else:
            pa = math.inf if self.prec is None else self.prec
            pb = math.inf if other.prec is None else other.prec
            prec = min(self._vlow() + pb, other._vlow() + pa)
            prec = int(prec)
        add, mul = self.ctx.add, self.ctx.mul
        out: dict[int, int] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if prec is not None and k >= prec:
                    continue
                s = add(out.get(k, 0), mul(a, b))
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentSeries._raw(self.ctx, out, prec)

    __rmul__ = __mul__

    def inverse(self, precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        """1/self; an exact non-monomial input gets ``precision`` terms."""
        ctx = self.ctx
        if not self.terms:
            raise DivideByZeroSeries("series is zero to precision")
        v = min(self.terms)
        if self.prec is None and len(self.terms) == 1:
            return LaurentSeries._raw(ctx, {-v: ctx.inv(self.terms[v])}, None)
        rel = precision if self.prec is None else self.prec - v
        u = [self.terms.get(v + i, 0) for i in range(rel)]
        u0inv = ctx.inv(u[0])
        add, mul, neg = ctx.add, ctx.mul, ctx.neg
        nz = [i for i in range(1, rel) if u[i]]
        b = [u0inv] + [0] * (rel - 1)
        for k in range(1, rel):
            acc = 0
            for i in nz:
                if i > k:
                    break
                if b[k - i]:
                    acc = add(acc, mul(u[i], b[k - i]))
            b[k] = mul(neg(acc), u0inv)
        return LaurentSeries._raw(ctx, {k - v: c for k, c in enumerate(b) if c}, rel - v)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def frobenius(self, k: int = 1) -> "LaurentSeries":
        """self^(p^k)."""
        pk = self.ctx.p**k
        frob = self.ctx.frob
        prec = None if self.prec is None else self.prec * pk
        return LaurentSeries._raw(self.ctx, {e * pk: frob(c, k) for e, c in self.terms.items()}, prec)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        p = self.ctx.p
        result = LaurentSeries._raw(self.ctx, {0: 1}, None)
        base = self
        while n:
            n, r = divmod(n, p)
            for _ in range(r):
                result = result * base
            if n:
                base = base.frobenius()
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.prec == other.prec and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.prec, frozenset(self.terms.items())))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equal on the common window."""
        return (self - other).is_zero()

    # -- calculus -----------------------------------------------------------
    def derivative(self) -> "LaurentSeries":
        ctx = self.ctx
        p = ctx.p
        out = {}
        for k, c in self.terms.items():
            m = k % p
            if m:
                out[k - 1] = ctx.mul(c, m)
        prec = None if self.prec is None else self.prec - 1
        return LaurentSeries._raw(ctx, out, prec)

    def pth_root(self) -> "LaurentSeries | None":
        p = self.ctx.p
        if any(k % p for k in self.terms):
            return None
        proot = self.ctx.proot
        # the coefficient of t^j in the root is read off t^(pj), known iff pj < prec
        prec = None if self.prec is None else -(-self.prec // p)
        return LaurentSeries._raw(self.ctx, {k // p: proot(c) for k, c in self.terms.items()}, prec)

    def __str__(self):
        from .parsing import format_poly

        body = format_poly(self.to_lpoly())
        if self.prec is None:
            return body
        tail = f"O(t^{self.prec})"
        return tail if body == "0" else f"{body} + {tail}"

    def __repr__(self):
        return f"LaurentSeries({self}, {self.ctx!r})"


@dataclass(frozen=True)
class Differential:
    """z dt, stored through z."""

    coefficient: LaurentSeries

    def valuation(self):
        return self.coefficient.valuation() + 1

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def __str__(self):
        return f"({self.coefficient}) dt"


def series_arith(op: str, a: LaurentSeries, b) -> LaurentSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a**b
    raise ValueError(f"unknown op {op!r}")


def valuation(z: LaurentSeries):
    return z.valuation()


def d(z: LaurentSeries) -> Differential:
    return Differential(z.derivative())


def series_pth_root(z: LaurentSeries) -> LaurentSeries | None:
    return z.pth_root()


def _as_series(z) -> LaurentSeries:
    return LaurentSeries.from_lpoly(z) if isinstance(z, LPoly) else z


# -- local Artin-Schreier solvability --------------------------------------------

@dataclass(frozen=True)
class LocalSolvability:
    verdict: str  # "solvable", "unsolvable" or "inconclusive"
    reduced_principal: LPoly
    residue: int
    exact: bool
    certificate: LaurentSeries | None = None

    @property
    def solvable(self) -> bool:
        return self.verdict == "solvable"


def _wp_series(h: LaurentSeries) -> LaurentSeries:
    return h - h.frobenius()


def as_solvable_local(z, precision: int = DEFAULT_PRECISION) -> LocalSolvability:
    """Decide whether h - h^p = z has a solution h in K((t)).

    The part of z with positive exponents is always of this form, with
    h = w + w^p + w^(p^2) + ...  The principal part is reduced by the same
    p-th power rewrite as in the global case, and the constant by its trace.
    A solvable verdict comes with a certificate h, exact up to the
    precision of z (or ``precision`` when z is exact).
    """
    z = _as_series(z)
    ctx = z.ctx
    p = ctx.p
    add, proot = ctx.add, ctx.proot
    if z.prec is not None and z.prec <= 0:
        return LocalSolvability("inconclusive", LPoly._raw(ctx, {}), 0, False)
    reduced: dict[int, int] = {}
    # z = reduced + c0 + tail - wp(big_h)
    big_h: dict[int, int] = {}
    c0 = 0
    tail = {}
    for k, c in z.terms.items():
        if k > 0:
            tail[k] = c
            continue
        if k == 0:
            c0 = add(c0, c)
            continue
        while k % p == 0:
            k //= p
            c = proot(c)
            big_h[k] = add(big_h.get(k, 0), c)
        s = add(reduced.get(k, 0), c)
        if s:
            reduced[k] = s
        else:
            reduced.pop(k, None)
    residue = ctx.trace(c0)
    red = LPoly._raw(ctx, reduced)
    exact = z.prec is None
    if reduced or residue:
        return LocalSolvability("unsolvable", red, residue, exact)

    gamma = wp_preimage_oracle(LPoly._raw(ctx, {0: c0} if c0 else {}), "linear", 0)
    prec = precision if z.prec is None else z.prec
    w = LaurentSeries._raw(ctx, tail, prec)
    big_w = LaurentSeries._raw(ctx, {}, prec)
    term = w
    while term.terms:
        big_w = big_w + term
        term = term.frobenius().truncate(prec)
    h = LaurentSeries.from_lpoly(gamma) + big_w - LaurentSeries.from_lpoly(LPoly._raw(ctx, big_h))
    return LocalSolvability("solvable", red, residue, exact, h.truncate(prec))


# -- growth of x_n ----------------------------------------------------------------

@dataclass
class ProbeRow:
    n: int
    v_z: int | float  # v(f^n - g^n)
    v_x: int | float  # v(x_n), x_n = df - eps^(n-1) dg
    v_one_minus: int | float  # v(1 - eps^n)
    cn: Fraction
    bound: Fraction  # what v(x_n) must reach if f^n - g^n is solvable
    flagged: bool
    verdict: str
    lemma: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def num(v):
            return None if v == math.inf else v

        return {
            "n": self.n,
            "v_z": num(self.v_z),
            "v_x": num(self.v_x),
            "v_one_minus_eps_n": num(self.v_one_minus),
            "cn": str(self.cn),
            "bound": str(self.bound),
            "flagged": self.flagged,
            "verdict": self.verdict,
            "lemma": self.lemma,
        }


@dataclass
class ProbeReport:
    case: int
    c: Fraction
    v_f: int
    v_eps: int
    swapped: bool
    stripped: tuple[int, int]
    exact: bool
    all_trivial: bool = False
    eps_order: int | None = None
    rows: list[ProbeRow] = field(default_factory=list)

    @property
    def flagged(self) -> list[int]:
        return [r.n for r in self.rows if r.flagged]

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "c": str(self.c),
            "v_f": self.v_f,
            "v_eps": self.v_eps,
            "swapped": self.swapped,
            "stripped": list(self.stripped),
            "exact": self.exact,
            "all_trivial": self.all_trivial,
            "eps_order": self.eps_order,
            "flagged": self.flagged,
            "rows": [r.to_json() for r in self.rows],
        }


def _strip_pth_powers(f: LaurentSeries) -> tuple[LaurentSeries, int]:
    a = 0
    while f.derivative().is_zero() and not f.is_constant():
        r = f.pth_root()
        if r is None:
            break
        f, a = r, a + 1
    return f, a


def _root_order(ctx: FieldCtx, c: int) -> int:
    n, k = c, 1
    while n != 1:
        n = ctx.mul(n, c)
        k += 1
    return k


def prop41_probe(f, g, n_max: int, precision: int = DEFAULT_PRECISION) -> ProbeReport:
    """Tabulate, for n <= n_max prime to p, the valuations that decide whether
    f^n - g^n can be written h - h^p in K((t)).

    With eps = g/f, x_n = df - eps^(n-1) dg and c = (1 - 1/p)(-v(f)), a
    solution for f^n - g^n of negative valuation forces

        v(x_n) >= c*n + v(f) + v(1 - eps^n)/p,

    since v(z) = p v(h) and v(dz) = v(dh) >= v(h) for z = h - h^p, while
    dz = n f^(n-1) x_n.  Rows violating this are flagged: the corresponding
    f^n - g^n cannot be solvable.
    """
    f, g = _as_series(f), _as_series(g)
    if f.ctx != g.ctx:
        raise CtxMismatch(f"{f.ctx} vs {g.ctx}")
    ctx = f.ctx
    p = ctx.p
    if g.is_constant():
        raise ValueError("g must be non-constant")
    if not f.terms or f.valuation() >= 0:
        raise ValueError("f must have a pole at t = 0")
    exact = f.exact and g.exact

    if not (f - g).terms:
        if not exact:
            raise PrecisionExhausted("f and g agree to working precision")
        rep = ProbeReport(case=2, c=Fraction(0), v_f=f.valuation(), v_eps=0, swapped=False,
                          stripped=(0, 0), exact=exact, all_trivial=True, eps_order=1)
        return rep

    f, a = _strip_pth_powers(f)
    g, b = _strip_pth_powers(g)
    swapped = g.valuation() < f.valuation()
    if swapped:
        f, g = g, f
        a, b = b, a
    vf = f.valuation()
    eps = g / f if not (f.exact and len(f.terms) == 1) else g * f.inverse()
    if eps.is_zero():
        raise PrecisionExhausted("eps = g/f vanishes to working precision")
    v_eps = eps.valuation()
    eps_order = None
    if v_eps > 0:
        case = 1
    elif eps.is_constant():
        # finite multiplicative order in K((t)) forces a constant, and every
        # non-zero constant of a finite field is a root of unity
        case = 2
        eps_order = _root_order(ctx, eps.terms[0])
    else:
        case = 3
    c = Fraction(p - 1, p) * (-vf)
    rep = ProbeReport(case=case, c=c, v_f=vf, v_eps=v_eps, swapped=swapped, stripped=(a, b),
                      exact=exact, eps_order=eps_order)

    df, dg = f.derivative(), g.derivative()
    for n in range(1, n_max + 1):
        if n % p == 0:
            continue
        one_minus = 1 - eps**n
        if one_minus.is_zero():
            continue
        z = f**n - g**n
        v_z = z.valuation()
        if v_z == math.inf:
            raise PrecisionExhausted(f"f^{n} - g^{n} vanishes to working precision")
        if exact:
            dz = z.derivative()
            v_x = dz.valuation() + 1 - (n - 1) * vf if dz.terms else math.inf
        else:
            x = df - eps ** (n - 1) * dg
            if x.is_zero():
                raise PrecisionExhausted(f"x_{n} vanishes to working precision")
            v_x = x.valuation() + 1
        v1 = one_minus.valuation()
        bound = c * n + vf + Fraction(v1, p)
        flagged = v_z < 0 and v_x < bound
        sol = as_solvable_local(z, precision)
        lemma = {
            "a_v_one_minus": v1,
            "b_v_z_additive": v_z == n * vf + v1,
            "c_v_z_negative": v_z < 0,
        }
        if sol.solvable and sol.certificate is not None:
            h = sol.certificate
            vh = h.valuation()
            lemma["d_v_z_eq_p_v_h"] = (v_z == p * vh) if v_z < 0 else None
            dz_v = z.derivative().valuation() + 1
            lemma["e_v_dz_ge_v_h"] = dz_v >= vh
        else:
            lemma["d_v_z_eq_p_v_h"] = None
            lemma["e_v_dz_ge_v_h"] = None
        lemma["flag_consistent"] = not (flagged and sol.solvable)
        rep.rows.append(ProbeRow(n, v_z, v_x, v1, c * n, bound, flagged, sol.verdict, lemma))
    return rep
