"""Point counts behind the effective topological decision.

Fix a map f of the affine line over k = GF(p^e) and view its target over
F_Q, Q = p^r with r | e.  ``S_d`` is the set of y in the algebraic closure
with f(y) in GF(Q^d).  Fiberwise,

    deg(f) * Q^d - B  <=  #S_d,    B = deg f',

because the fibres of f lose, in total, at most one point per root of f'
counted with multiplicity.  If f and g send every point to the same closed
point then S_d is covered by the curves f = g^(Q^m) (and g = f^(Q^-m)) for m
in M_d = (-d/2, d/2], which gives #S_d <= d * Q^(d/2) * (deg f + deg g).
:func:`break_depth` finds the first d where the two bounds collide; all the
comparisons square both sides so nothing leaves the integers.

Fibres are checked with one polynomial division each: the relation holds over
beta iff every root of f - beta is a root of mu_beta(g), where mu_beta is the
minimal polynomial of beta over F_Q.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .config import default_budget
from .errors import BudgetExceeded, DegenerateGraph, InconsistencyDetected, InseparableMap
from .field import GF, FieldCtx, FieldElem, embedding
from .poly import (
    LPoly,
    _ddivmod,
    _dgcd,
    _dmod,
    _dmulmod,
    _dradical,
    _dsub,
    eval_int,
    find_root,
    squarefree_root_count,
)


def _base_degree(ctx: FieldCtx, r: int | None) -> int:
    if r is None:
        return ctx.e
    if r < 1 or ctx.e % r:
        raise ValueError(f"base degree {r} must divide {ctx.e}")
    return r


def m_set(d: int) -> list[int]:
    """Integers m with -d/2 < m <= d/2."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return list(range(-((d - 1) // 2), d // 2 + 1))


def slack_B(f: LPoly) -> int:
    df = f.derivative()
    if df.is_zero():
        raise InseparableMap("f is a p-th power; strip Frobenius first")
    return int(df.degree())


def break_depth(deg_f: int, deg_g: int, q: int, B: int) -> int:
    """Smallest d >= 1 with deg_f*q^d - B > d*q^(d/2)*(deg_f + deg_g)."""
    if deg_f < 1 or deg_g < 1:
        raise ValueError("degrees must be positive")
    s = deg_f + deg_g
    d = 1
    while True:
        qd = q**d
        lower = deg_f * qd - B
        if lower > 0 and lower * lower > d * d * qd * s * s:
            return d
        d += 1


def upper_squared(deg_f: int, deg_g: int, q: int, d: int) -> int:
    """(d * q^(d/2) * (deg_f + deg_g))^2."""
    return d * d * q**d * (deg_f + deg_g) ** 2


# -- fibres ---------------------------------------------------------------------

@dataclass(frozen=True)
class PointWitness:
    """A point y whose images f(y), g(y) lie in different closed points."""

    y: FieldElem
    degree: int  # [k(y) : k]
    depth: int  # [F_Q(f(y)) : F_Q]
    f_value: FieldElem
    g_value: FieldElem

    def to_json(self) -> dict:
        from .parsing import format_field

        return {
            "y": str(self.y),
            "field": format_field(self.y.ctx),
            "degree": self.degree,
            "depth": self.depth,
            "f_y": str(self.f_value),
            "g_y": str(self.g_value),
        }


def same_closed_point(ctx: FieldCtx, a: int, b: int, r: int) -> bool:
    """Whether b = a^(p^(r m)) for some m."""
    c = a
    while True:
        if c == b:
            return True
        c = ctx.frob(c, r)
        if c == a:
            return False


class _FiberScanner:
    """Checks the closed-point relation fibre by fibre over k_d = GF(Q^d)."""

    def __init__(self, f: LPoly, g: LPoly, r: int, budget: int | None = None, seed: int = 0):
        self.f, self.g, self.r = f, g, r
        self.ctx = f.ctx
        self.budget = default_budget() if budget is None else budget
        self.rng = random.Random(seed)

    def _setup(self, d):
        ctx, r = self.ctx, self.r
        p, e = ctx.p, ctx.e
        kd = GF(p, r * d)
        if kd.q > self.budget:
            raise BudgetExceeded(f"GF({p}^{r * d}) exceeds budget {self.budget}")
        T = GF(p, math.lcm(e, r * d))
        ek, ed = embedding(ctx, T), embedding(kd, T)
        fT = [ek.map_int(c) for c in self.f.dense()]
        gT = [ek.map_int(c) for c in self.g.dense()]
        return kd, T, ed, fT, gT

    def violations(self, d: int, exact_only: bool = True):
        """Yield, per bad fibre, (beta in k_d, the T-polynomial whose roots
        are the offending y, T).  One fibre per orbit of the q-power map."""
        ctx, r = self.ctx, self.r
        kd, T, ed, fT, gT = self._setup(d)
        e_step = ctx.e % (r * d)
        seen = set()
        for beta in range(kd.q):
            if beta in seen:
                continue
            deg = kd.degree_of(beta, r)
            if exact_only and deg != d:
                continue
            # fibres over beta and beta^q are exchanged by y -> y^q
            orbit = [beta]
            c = kd.frob(beta, e_step) if e_step else beta
            while c != beta:
                orbit.append(c)
                c = kd.frob(c, e_step)
            seen.update(orbit)
            bad = self._fiber(T, ed, fT, gT, kd, beta, deg)
            if bad is not None:
                yield beta, bad, T

    def _fiber(self, T, ed, fT, gT, kd, beta, deg):
        A = list(fT)
        A[0] = T.sub(A[0], ed.map_int(beta))
        R = _dradical(T, A)
        if len(R) < 2:
            return None
        u = _dmod(T, gT, R)
        acc = [1]
        b = beta
        for _ in range(deg):
            acc = _dmulmod(T, acc, _dsub(T, u, [ed.map_int(b)]), R)
            b = kd.frob(b, self.r)
        if not acc:
            return None
        common = _dgcd(T, R, acc)
        return _ddivmod(T, R, common)[0]

    def witness(self, d: int, bad: list, T: FieldCtx) -> PointWitness:
        y, emb = find_root(LPoly.from_dense(T, bad), self.rng)
        return make_witness(self.f, self.g, y, self.r)


def make_witness(f: LPoly, g: LPoly, y: FieldElem, r: int) -> PointWitness:
    ctx = f.ctx
    big = y.ctx
    emb = embedding(ctx, big)
    fy = eval_int(f, y.n, big, emb)
    gy = eval_int(g, y.n, big, emb)
    if same_closed_point(big, fy, gy, r):
        raise InconsistencyDetected(f"claimed witness {y} satisfies the relation")
    return PointWitness(
        y=y,
        degree=big.degree_of(y.n, ctx.e),
        depth=big.degree_of(fy, r),
        f_value=FieldElem(big, fy),
        g_value=FieldElem(big, gy),
    )


def first_violation(f: LPoly, g: LPoly, r: int, d: int, budget=None, seed=0, exact_only=True):
    """A witness among y with f(y) of degree d over F_Q, or None."""
    scanner = _FiberScanner(f, g, r, budget, seed)
    for _beta, bad, T in scanner.violations(d, exact_only):
        return scanner.witness(d, bad, T)
    return None


def _towers(ctx: FieldCtx, r: int, d: int, deg_f: int, budget: int):
    """(s, field) for the degrees s over k that a y with f(y) in k_d can have."""
    e, p = ctx.e, ctx.p
    step = math.lcm(e, r * d) // e
    out = []
    total = 0
    for s in range(step, step * deg_f + 1, step):
        total += ctx.q**s
        if total > budget:
            raise BudgetExceeded(f"enumerating towers up to GF({ctx.q}^{s}) exceeds budget {budget}")
        out.append((s, GF(p, e * s)))
    return out


def enumerate_violation(f: LPoly, g: LPoly, r: int, d: int, budget=None):
    """Brute-force counterpart of :func:`first_violation`: walk every y."""
    ctx = f.ctx
    budget = default_budget() if budget is None else budget
    for s, big in _towers(ctx, r, d, int(f.degree()), budget):
        emb = embedding(ctx, big)
        for y in range(big.q):
            if big.degree_of(y, ctx.e) != s:
                continue
            fy = eval_int(f, y, big, emb)
            if big.degree_of(fy, r) != d:
                continue
            gy = eval_int(g, y, big, emb)
            if not same_closed_point(big, fy, gy, r):
                return make_witness(f, g, FieldElem(big, y), r)
    return None


# -- counts -----------------------------------------------------------------------

def s_d_count(f: LPoly, d: int, method: str = "fiber", base_degree: int | None = None,
              budget: int | None = None) -> int:
    """#{y : f(y) in GF(Q^d)}, Q = p^base_degree (default: the field size)."""
    ctx = f.ctx
    r = _base_degree(ctx, base_degree)
    budget = default_budget() if budget is None else budget
    if f.degree() < 1 or not f.is_polynomial():
        raise ValueError("f must be a non-constant polynomial")
    if method == "fiber":
        p, e = ctx.p, ctx.e
        kd = GF(p, r * d)
        if kd.q > budget:
            raise BudgetExceeded(f"GF({p}^{r * d}) exceeds budget {budget}")
        T = GF(p, math.lcm(e, r * d))
        fT = f.map_coeffs(embedding(ctx, T))
        ed = embedding(kd, T)
        return sum(squarefree_root_count(fT - FieldElem(T, ed.map_int(b))) for b in range(kd.q))
    if method == "enumerate":
        Qd = ctx.p ** (r * d)
        smax = int(f.degree()) * math.lcm(ctx.e, r * d) // ctx.e
        if sum(ctx.q**s for s in range(1, smax + 1)) > budget:
            raise BudgetExceeded(f"towers up to GF({ctx.q}^{smax}) exceed budget {budget}")
        count = 0
        for s in range(1, smax + 1):
            big = GF(ctx.p, ctx.e * s)
            emb = embedding(ctx, big)
            for y in range(big.q):
                if big.degree_of(y, ctx.e) != s:
                    continue
                fy = eval_int(f, y, big, emb)
                if big.pow(fy, Qd) == fy:
                    count += 1
        return count
    raise ValueError(f"unknown method {method!r}")


def z_m_degree(deg_f: int, deg_g: int, q: int, m: int) -> int:
    if m >= 0:
        return deg_f + q**m * deg_g
    return q ** (-m) * deg_f + deg_g


def z_m_count(f: LPoly, g: LPoly, m: int, base_degree: int | None = None) -> tuple[int, int]:
    """(closed degree, distinct affine solutions) of f = g^(Q^m), mirrored
    as g = f^(Q^-m) for m < 0."""
    ctx = f.ctx
    r = _base_degree(ctx, base_degree)
    Q = ctx.p**r
    deg = z_m_degree(int(f.degree()), int(g.degree()), Q, m)
    diff = f - g.frobenius(r * m) if m >= 0 else g - f.frobenius(-r * m)
    if diff.is_zero():
        raise DegenerateGraph(f"the twisted maps coincide for m = {m}")
    roots = squarefree_root_count(diff) if diff.degree() > 0 else 0
    if roots > deg:
        raise InconsistencyDetected(f"{roots} affine solutions exceed degree {deg}")
    return deg, roots


# -- report -----------------------------------------------------------------------

@dataclass
class DepthRow:
    d: int
    m_set: list[int]
    s_d: int
    z_degrees: dict[int, int]
    z_roots: dict[int, int | None]
    lower: int
    upper_sq: int
    contained: bool
    witness: PointWitness | None = None

    @property
    def chain_broken(self) -> bool:
        return self.lower > 0 and self.lower * self.lower > self.upper_sq

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m_set": self.m_set,
            "s_d": self.s_d,
            "z_degrees": {str(m): v for m, v in sorted(self.z_degrees.items())},
            "z_roots": {str(m): v for m, v in sorted(self.z_roots.items())},
            "lower": self.lower,
            "upper_squared": self.upper_sq,
            "contained": self.contained,
            "chain_broken": self.chain_broken,
            "witness": self.witness.to_json() if self.witness else None,
        }


@dataclass
class CountingReport:
    q: int
    deg_f: int
    deg_g: int
    slack_B: int
    break_depth: int
    rows: list[DepthRow] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "deg_f": self.deg_f,
            "deg_g": self.deg_g,
            "slack_B": self.slack_B,
            "break_depth": self.break_depth,
            "rows": [row.to_json() for row in self.rows],
        }


def counting_report(f: LPoly, g: LPoly, d_max: int, base_degree: int | None = None,
                    budget: int | None = None, seed: int = 0) -> CountingReport:
    ctx = f.ctx
    r = _base_degree(ctx, base_degree)
    if f == g:
        raise DegenerateGraph("f and g coincide")
    Q = ctx.p**r
    deg_f, deg_g = int(f.degree()), int(g.degree())
    B = slack_B(f)
    rep = CountingReport(Q, deg_f, deg_g, B, break_depth(deg_f, deg_g, Q, B))
    for d in range(1, d_max + 1):
        s = s_d_count(f, d, "fiber", r, budget)
        lower = deg_f * Q**d - B
        if lower > s:
            raise InconsistencyDetected(f"#S_{d} = {s} is below the bound {lower}")
        ms = m_set(d)
        degs, roots = {}, {}
        for m in ms:
            degs[m] = z_m_degree(deg_f, deg_g, Q, m)
            try:
                roots[m] = z_m_count(f, g, m, r)[1]
            except DegenerateGraph:
                roots[m] = None
        witness = first_violation(f, g, r, d, budget, seed, exact_only=False)
        rep.rows.append(DepthRow(d, ms, s, degs, roots, lower, upper_squared(deg_f, deg_g, Q, d),
                                 witness is None, witness))
    return rep
