"""p-power towers in F_q[t] and F_q(t).

A reduced F_p-algebra R has inverse perfection equal to the intersection of
the subrings R^(p^n).  For R = F_q[t] or F_q(t) membership in R^(p^n) is
decided by taking p-th roots n times; a non-constant function fails after
finitely many steps because some zero or pole order stops being divisible by
p.  Only constants survive every step, and those are already p-th powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ZeroPolynomial
from .field import FieldElem
from .poly import LPoly, poly_divmod, poly_gcd


class RationalFn:
    """num/den in lowest terms with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: LPoly, den: LPoly | None = None):
        ctx = num.ctx
        if den is None:
            den = LPoly.constant(ctx, 1)
        num._coerce(den)
        if den.is_zero():
            raise ZeroPolynomial("zero denominator")
        if not (num.is_polynomial() and den.is_polynomial()):
            raise ValueError("numerator and denominator must be polynomials")
        if num.is_zero():
            num, den = num, LPoly.constant(ctx, 1)
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
            lead_inv = ctx.inv(den.terms[den.degree()])
            num, den = num.scale(lead_inv), den.scale(lead_inv)
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> FieldElem:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    def pth_root(self) -> "RationalFn | None":
        # lowest terms with monic den is unique, so a p-th root of the quotient
        # must be a p-th root of numerator and denominator separately
        rn = self.num.pth_root()
        rd = self.den.pth_root()
        if rn is None or rd is None:
            return None
        return RationalFn(rn, rd)

    def frobenius(self, k: int = 1) -> "RationalFn":
        return RationalFn(self.num.frobenius(k), self.den.frobenius(k))

    def __eq__(self, other):
        if isinstance(other, LPoly):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        from .parsing import format_poly

        if self.den.is_constant():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"RationalFn({self}, {self.ctx!r})"


@dataclass
class Membership:
    """Outcome of a p^n-th root test; ``chain[i]`` is the p^i-th root."""

    member: bool
    chain: list = field(default_factory=list)

    def __bool__(self):
        return self.member


def perf_membership(z: LPoly | RationalFn, n: int) -> Membership:
    if n < 0:
        raise ValueError("n must be >= 0")
    chain = [z]
    cur = z
    for _ in range(n):
        cur = cur.pth_root()
        if cur is None:
            return Membership(False, chain)
        chain.append(cur)
    return Membership(True, chain)


@dataclass(frozen=True)
class Perfection:
    kind: str  # "constant", "not_perfect" or "undecided"
    constant: FieldElem | None = None
    depth: int | None = None


def perfection_of(z: LPoly | RationalFn, n_max: int | None = None) -> Perfection:
    """The constant z, or the first n at which z stops being a p^n-th power."""
    if isinstance(z, LPoly):
        if z.is_constant():
            return Perfection("constant", constant=z.coeff(0))
    elif z.is_constant():
        return Perfection("constant", constant=z.constant_value())
    n = 0
    cur = z
    while n_max is None or n < n_max:
        n += 1
        cur = cur.pth_root()
        if cur is None:
            return Perfection("not_perfect", depth=n)
    return Perfection("undecided", depth=n_max)
