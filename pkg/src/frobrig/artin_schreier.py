"""Artin-Schreier classes in B/wp(B) for B = F_q[t] or F_q[t, 1/t].

Here wp(h) = h - h^p.  Because c t^(pm) - c^(1/p) t^m = -wp(c^(1/p) t^m), every
class has a unique representative whose non-constant exponents are all prime
to p; the constant part only matters through its trace to F_p, since
c lies in wp(F_q) exactly when Tr(c) = 0.

:func:`wp_preimage_oracle` decides the same question by brute force or by
solving the F_p-linear system wp(h) = z, and shares no code with
:func:`as_reduce`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import default_budget
from .errors import BudgetExceeded, ZeroParameter
from .field import FieldCtx, FieldElem
from .poly import LPoly


@dataclass(frozen=True)
class ASClass:
    ctx: FieldCtx
    reduced: LPoly
    residue: int

    @property
    def trivial(self) -> bool:
        return self.reduced.is_zero() and self.residue == 0

    def __add__(self, other: "ASClass") -> "ASClass":
        return ASClass(self.ctx, self.reduced + other.reduced, (self.residue + other.residue) % self.ctx.p)

    def __neg__(self) -> "ASClass":
        return ASClass(self.ctx, -self.reduced, (-self.residue) % self.ctx.p)

    def __sub__(self, other: "ASClass") -> "ASClass":
        return self + (-other)

    def to_json(self, var: str = "t") -> dict:
        from .parsing import format_elem, format_poly

        return {
            "reduced": [[k, format_elem(self.ctx, c)] for k, c in sorted(self.reduced.terms.items())],
            "reduced_text": format_poly(self.reduced, var),
            "residue": self.residue,
            "trivial": self.trivial,
        }


def wp(h: LPoly) -> LPoly:
    """h - h^p."""
    return h - h.frobenius()


def as_reduce(z: LPoly) -> ASClass:
    ctx = z.ctx
    p = ctx.p
    add, proot = ctx.add, ctx.proot
    out: dict[int, int] = {}
    c0 = 0
    for k, c in z.terms.items():
        if k == 0:
            c0 = add(c0, c)
            continue
        while k % p == 0:
            k //= p
            c = proot(c)
        s = add(out.get(k, 0), c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return ASClass(ctx, LPoly._raw(ctx, out), ctx.trace(c0))


def pair_class(f: LPoly, g: LPoly, n: int, c: FieldElem | int | None = None) -> ASClass:
    """Class of c*(f^n - g^n): the difference of the pullbacks of the torsor
    x - x^p = c*s^n along f and g."""
    if n < 1:
        raise ValueError("n must be >= 1")
    z = f**n - g**n
    if c is not None:
        z = z * c
    return as_reduce(z)


def family_class(tparam: FieldElem) -> ASClass:
    """Class of y^p - tparam*y, which reduces to (1 - tparam)*y."""
    if not tparam:
        raise ZeroParameter("the Artin-Schreier family needs a non-zero parameter")
    ctx = tparam.ctx
    y = LPoly.t(ctx)
    return as_reduce(y.frobenius() - y * tparam)


# -- independent oracle ---------------------------------------------------------

def _solve_mod_p(columns: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """Some x with sum x_j columns[j] = rhs over Z/p, or None."""
    nrows = len(rhs)
    ncols = len(columns)
    rows = [[columns[j][i] % p for j in range(ncols)] + [rhs[i] % p] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    if any(row[-1] for row in rows[r:]):
        return None
    x = [0] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][-1]
    return x


def _exponent_window(z: LPoly, degree_bound: int) -> range:
    lo = -degree_bound if z.terms and min(z.terms) < 0 else 0
    return range(lo, degree_bound + 1)


def wp_preimage_oracle(
    z: LPoly,
    method: str = "linear",
    degree_bound: int | None = None,
    budget: int | None = None,
) -> LPoly | None:
    """Some h with wp(h) = z and exponents in [-D, D] (or [0, D] when z is a
    polynomial), D = degree_bound; None if there is none in that window.

    If wp(h) = z with deg z = D >= 1 then deg h = D/p, so D = deg z is a
    sufficient bound for polynomials (symmetrically for poles).
    """
    ctx = z.ctx
    if degree_bound is None:
        degree_bound = max([abs(k) for k in z.terms], default=0)
    window = _exponent_window(z, degree_bound)
    if method == "enumerate":
        return _oracle_enumerate(z, window, budget)
    if method == "linear":
        return _oracle_linear(z, window)
    raise ValueError(f"unknown method {method!r}")


def _oracle_enumerate(z, window, budget):
    ctx = z.ctx
    if budget is None:
        budget = default_budget()
    count = ctx.q ** len(window)
    if count > budget:
        raise BudgetExceeded(f"{count} candidate preimages exceed budget {budget}")
    exps = list(window)
    for coeffs in itertools.product(range(ctx.q), repeat=len(exps)):
        h = LPoly._raw(ctx, {k: c for k, c in zip(exps, coeffs) if c})
        if wp(h) == z:
            return h
    return None


def _oracle_linear(z, window):
    ctx = z.ctx
    p, e = ctx.p, ctx.e
    exps = list(window)
    # rows: F_p coordinates of every coefficient wp(h) can touch
    touched = sorted(set(exps) | {k * p for k in exps} | set(z.terms))
    row_of = {k: i for i, k in enumerate(touched)}

    def coords(poly):
        vec = [0] * (len(touched) * e)
        for k, c in poly.terms.items():
            base = row_of[k] * e
            for j, d in enumerate(ctx.digits(c)):
                vec[base + j] = d
        return vec

    unknowns = [(k, p**j) for k in exps for j in range(e)]  # basis w^j t^k
    columns = [coords(wp(LPoly._raw(ctx, {k: enc}))) for k, enc in unknowns]
    sol = _solve_mod_p(columns, coords(z), p)
    if sol is None:
        return None
    h = LPoly._raw(ctx, {})
    for (k, enc), x in zip(unknowns, sol):
        if x:
            h = h + LPoly._raw(ctx, {k: ctx.mul(enc, x)})
    return h
