"""Three ways to compare polynomial maps f, g of the affine line over k = GF(q).

* syntactically: f^(p^a) = g^(p^b) for some a, b >= 0;
* on closed points: f(y) and g(y) are conjugate under x -> x^Q for every y;
* on H^1 with F_p coefficients: the pullbacks of the torsors x - x^p = c t^n
  agree, i.e. c (f^n - g^n) lies in wp(k[t]).

The target line is taken over F_Q with Q = p^r, r = ``base_degree`` dividing
[k : F_p].  With r = 1 (the default) closed points of the target are orbits
of the absolute Frobenius x -> x^p and any a, b are allowed.  For general r
the constants of F_Q must be respected too, so a = b mod r.

The first route decides everything on its own.  The other two only ever
produce witnesses of inequality, except that :func:`decide_top` bounds the
depth at which a topological witness must show up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .artin_schreier import ASClass, as_reduce
from .counting import (
    PointWitness,
    _FiberScanner,
    break_depth,
    enumerate_violation,
    first_violation,
    make_witness,
    slack_B,
)
from .errors import ConstantMap, CtxMismatch, InconsistencyDetected
from .field import GF, FieldElem, embedding
from .poly import LPoly


@dataclass(frozen=True)
class MapPair:
    f: LPoly
    g: LPoly
    base_degree: int = 1

    def __post_init__(self):
        f, g = self.f, self.g
        if f.ctx != g.ctx:
            raise CtxMismatch(f"{f.ctx} vs {g.ctx}")
        for name, h in (("f", f), ("g", g)):
            if not h.is_polynomial():
                raise ValueError(f"{name} has negative exponents")
            if h.is_constant():
                raise ConstantMap(f"{name} is constant")
        r = self.base_degree
        if r < 1 or f.ctx.e % r:
            raise ValueError(f"base degree {r} must divide {f.ctx.e}")

    @property
    def ctx(self):
        return self.f.ctx

    @property
    def Q(self) -> int:
        return self.ctx.p**self.base_degree

    def swapped(self) -> "MapPair":
        return MapPair(self.g, self.f, self.base_degree)


@dataclass(frozen=True)
class TorsorWitness:
    n: int
    c: FieldElem
    cls: ASClass

    def to_json(self) -> dict:
        return {"n": self.n, "c": str(self.c), "class": self.cls.to_json()}


@dataclass(frozen=True)
class Verdict:
    kind: str  # "equivalent", "not_equivalent" or "inconclusive"
    a: int | None = None
    b: int | None = None
    witness: PointWitness | TorsorWitness | None = None
    depth: int | None = None  # depth reached, or depth of the witness
    method: str = ""

    @property
    def equivalent(self) -> bool:
        return self.kind == "equivalent"

    @property
    def exit_code(self) -> int:
        return {"equivalent": 0, "not_equivalent": 1, "inconclusive": 2}[self.kind]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "method": self.method}
        if self.a is not None:
            out["a"], out["b"] = self.a, self.b
        if self.depth is not None:
            out["depth"] = self.depth
        out["witness"] = self.witness.to_json() if self.witness is not None else None
        return out


def _cores(pair: MapPair):
    ff = pair.f.frobenius_reduce()
    fg = pair.g.frobenius_reduce()
    return ff.core, ff.a, fg.core, fg.a


def equal_up_to_frobenius(pair: MapPair) -> Verdict:
    F, alpha, G, beta = _cores(pair)
    if F == G and (alpha - beta) % pair.base_degree == 0:
        # f^(p^a) = g^(p^b) iff alpha + a = beta + b
        a, b = max(beta - alpha, 0), max(alpha - beta, 0)
        return Verdict("equivalent", a, b, method="frobenius")
    return Verdict("not_equivalent", method="frobenius")


def top_equal(pair: MapPair, D: int, method: str = "fiber", budget: int | None = None,
              seed: int = 0) -> Verdict:
    """First y (by depth d <= D) where f(y), g(y) are different closed points."""
    r = pair.base_degree
    for d in range(1, D + 1):
        if method == "fiber":
            w = first_violation(pair.f, pair.g, r, d, budget, seed)
        elif method == "enumerate":
            w = enumerate_violation(pair.f, pair.g, r, d, budget)
        else:
            raise ValueError(f"unknown method {method!r}")
        if w is not None:
            return Verdict("not_equivalent", witness=w, depth=d, method=f"top:{method}")
    return Verdict("inconclusive", depth=D, method=f"top:{method}")


def _torsor_coefficients(pair: MapPair) -> list[FieldElem]:
    """An F_p-basis of F_Q inside k."""
    ctx, r = pair.ctx, pair.base_degree
    if r == 1:
        return [ctx.one]
    sub = GF(ctx.p, r)
    emb = embedding(sub, ctx)
    return [emb(FieldElem(sub, ctx.p**j)) for j in range(r)]


def h1_equal(pair: MapPair, N: int = 50) -> Verdict:
    p = pair.ctx.p
    coeffs = _torsor_coefficients(pair)
    fn = gn = LPoly.constant(pair.ctx, 1)
    for n in range(1, N + 1):
        fn, gn = fn * pair.f, gn * pair.g
        if n % p == 0:
            continue
        z = fn - gn
        for c in coeffs:
            cls = pair_class_of(z, c)
            if not cls.trivial:
                return Verdict("not_equivalent", witness=TorsorWitness(n, c, cls), depth=n, method="h1")
    return Verdict("inconclusive", depth=N, method="h1")


def pair_class_of(z: LPoly, c: FieldElem) -> ASClass:
    return as_reduce(z if c == 1 else z * c)


def decision_depth(pair: MapPair) -> tuple[int, bool]:
    """(d*, swap): scanning depths 1..d* of the chosen orientation must turn
    up a witness unless the maps agree up to Frobenius."""
    F, alpha, G, beta = _cores(pair)
    r, Q = pair.base_degree, pair.Q
    s = (beta - alpha) % r
    t = (alpha - beta) % r
    p = pair.ctx.p
    d_f = break_depth(int(F.degree()), int(G.degree()) * p**s, Q, slack_B(F))
    d_g = break_depth(int(G.degree()), int(F.degree()) * p**t, Q, slack_B(G))
    return (d_f, False) if d_f <= d_g else (d_g, True)


def decide_top(pair: MapPair, budget: int | None = None, seed: int = 0) -> Verdict:
    """Decide topological agreement, which by the counting bound is
    equivalent to agreement up to Frobenius."""
    syntactic = equal_up_to_frobenius(pair)
    if syntactic.equivalent:
        return Verdict("equivalent", syntactic.a, syntactic.b, depth=0, method="decide")
    F, alpha, G, beta = _cores(pair)
    r = pair.base_degree
    # Q-orbits are stable under p-th powers, so compare the cores directly,
    # keeping the part of the twist that Q-powers cannot absorb
    d_star, swap = decision_depth(pair)
    if swap:
        F, G, alpha, beta = G, F, beta, alpha
    G_tw = G.frobenius((beta - alpha) % r)
    scanner = _FiberScanner(F, G_tw, r, budget, seed)
    for d in range(1, d_star + 1):
        for _beta, bad, T in scanner.violations(d):
            w = scanner.witness(d, bad, T)
            # the point is a witness for the original maps as well
            w = make_witness(pair.f, pair.g, w.y, r)
            return Verdict("not_equivalent", witness=w, depth=d, method="decide")
    raise InconsistencyDetected(
        f"no topological witness up to depth {d_star} although the maps differ up to Frobenius"
    )


@dataclass
class CrosscheckReport:
    frobenius: Verdict
    topological: Verdict
    h1: Verdict
    decided: Verdict | None = None
    consistent: bool = True

    @property
    def verdict(self) -> Verdict:
        return self.frobenius

    def to_json(self) -> dict:
        out = {
            "frobenius": self.frobenius.to_json(),
            "topological": self.topological.to_json(),
            "h1": self.h1.to_json(),
            "consistent": self.consistent,
        }
        if self.decided is not None:
            out["decided"] = self.decided.to_json()
        return out


def theorem_crosscheck(pair: MapPair, D: int = 4, N: int = 50, decide: bool = False,
                       budget: int | None = None, seed: int = 0) -> CrosscheckReport:
    """Run every checker and assert the implications between them."""
    frob = equal_up_to_frobenius(pair)
    top = top_equal(pair, D, budget=budget, seed=seed)
    h1 = h1_equal(pair, N)
    if frob.equivalent and not (top.kind == "inconclusive" and h1.kind == "inconclusive"):
        raise InconsistencyDetected(f"Frobenius-equivalent pair failed a pullback test: {top}, {h1}")
    decided = None
    if decide:
        decided = decide_top(pair, budget, seed)
        if decided.equivalent != frob.equivalent:
            raise InconsistencyDetected("decide_top disagrees with the Frobenius normal form")
    return CrosscheckReport(frob, top, h1, decided)
