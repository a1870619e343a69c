"""Acceptance gate: eight criteria, each with its own time limit.

Run with ``pytest -m acceptance`` (one PASS/FAIL line per criterion is printed
in the terminal summary) or directly as ``python tests/test_acceptance.py``.
"""

import itertools
import random
import time

import pytest

from frobrig.artin_schreier import as_reduce, family_class, wp_preimage_oracle
from frobrig.counting import break_depth, s_d_count, slack_B, upper_squared
from frobrig.field import GF, FieldElem
from frobrig.laurent import LaurentSeries, as_solvable_local
from frobrig.parsing import parse_poly
from frobrig.perfection import RationalFn, perfection_of
from frobrig.poly import LPoly, derivative, evaluate
from frobrig.rigidity import MapPair, decide_top, equal_up_to_frobenius, h1_equal, top_equal

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


class Criterion:
    """Times a block, records one summary line and fails on overrun."""

    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []

    def check(self, cond, msg):
        if not cond:
            self.failures.append(msg)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed >= self.limit:
            self.failures.append(f"took {elapsed:.3f}s, limit {self.limit}s")
        status = "PASS" if not self.failures else "FAIL"
        line = f"[{status}] #{self.number} {self.title} ({elapsed:.3f}s / {self.limit}s)"
        if self.failures:
            line += f": {self.failures[0]}"
        RESULTS.append(line)
        print(line)
        assert not self.failures, self.failures[:5]
        return True


def _reduced(rng, ctx, max_deg):
    deg = rng.randint(1, max_deg)
    coeffs = [rng.randrange(ctx.q) for _ in range(deg)] + [rng.randrange(1, ctx.q)]
    f = LPoly.from_dense(ctx, coeffs)
    if derivative(f).is_zero():
        f = f + LPoly.t(ctx)
    return f


def _same_orbit(fy, gy, r):
    x = fy
    for _ in range(fy.ctx.e):
        if x == gy:
            return True
        x = x ** (fy.ctx.p**r)
    return False


def test_1_artin_schreier_oracle_equivalence():
    with Criterion(1, "Artin-Schreier reduction agrees with the enumeration oracle", 5.0) as c:
        cases = []
        F2, F3 = GF(2), GF(3)
        for coeffs in itertools.product(range(2), repeat=5):
            cases.append(LPoly.from_dense(F2, list(coeffs)))
        for coeffs in itertools.product(range(3), repeat=4):
            cases.append(LPoly.from_dense(F3, list(coeffs)))
        for z in cases:
            trivial = as_reduce(z).trivial
            h = wp_preimage_oracle(z, "enumerate")
            c.check(trivial == (h is not None), f"disagreement on {z}")
            if h is not None:
                c.check(h - h.frobenius() == z, f"bad preimage for {z}")
        c.check(len(cases) == 32 + 81, "case count")


def test_2_frobenius_soundness():
    with Criterion(2, "Frobenius-equivalent pairs pass every pullback test", 60.0) as c:
        rng = random.Random(20240601)
        fields = [GF(2), GF(3), GF(2, 2)]
        for i in range(1000):
            ctx = fields[i % 3]
            core = _reduced(rng, ctx, 4)
            b = rng.randint(0, 3)
            f, g = core, core.frobenius(b)
            if rng.random() < 0.5:
                f, g = g, f
            pair = MapPair(f, g)
            v = equal_up_to_frobenius(pair)
            c.check(v.equivalent and min(v.a, v.b) == 0, f"pair {i}: {v}")
            if not v.equivalent:
                continue
            c.check(f.frobenius(v.a) == g.frobenius(v.b), f"pair {i}: a, b do not match")
            for h in (f, g):
                form = h.frobenius_reduce()
                c.check(form.core == core and form.expand() == h, f"pair {i}: core round trip")
            c.check(h1_equal(pair, 50).kind == "inconclusive", f"pair {i}: h1 violation")
            c.check(top_equal(pair, 4).kind == "inconclusive", f"pair {i}: topological violation")


def test_3_topological_decision_is_complete():
    with Criterion(3, "decide_top finds a witness for every non-equivalent pair", 120.0) as c:
        rng = random.Random(7)
        fields = [GF(2), GF(3)]
        done = 0
        while done < 200:
            ctx = fields[done % 2]
            f, g = _reduced(rng, ctx, 3), _reduced(rng, ctx, 3)
            if f == g:
                continue
            done += 1
            pair = MapPair(f, g)
            c.check(not equal_up_to_frobenius(pair).equivalent, f"{f}, {g} reported equivalent")
            v = decide_top(pair)
            bound = break_depth(int(f.degree()), int(g.degree()), ctx.q, slack_B(f))
            c.check(v.kind == "not_equivalent", f"{f}, {g}: {v.kind}")
            if v.witness is None:
                continue
            c.check(v.depth <= bound, f"{f}, {g}: depth {v.depth} > {bound}")
            y = v.witness.y
            fy, gy = evaluate(f, y), evaluate(g, y)
            c.check(not _same_orbit(fy, gy, 1), f"{f}, {g}: witness {y} is not one")


def test_4_break_depth():
    with Criterion(4, "break_depth(2, 2, 2, 1) = 9", 0.001) as c:
        d = break_depth(2, 2, 2, 1)
        c.check(d == 9, f"got {d}")
        c.check((2 * 2**8 - 1) ** 2 <= upper_squared(2, 2, 2, 8), "d = 8 should not break")
        c.check((2 * 2**9 - 1) ** 2 == 1_046_529 > upper_squared(2, 2, 2, 9) == 663_552, "d = 9 should break")


def test_5_s_d_exactness():
    with Criterion(5, "#S_d of t^2+t over GF(2) is 4, 8, 16 by both methods", 5.0) as c:
        f = parse_poly("t^2+t", GF(2))
        for d, expect in [(1, 4), (2, 8), (3, 16)]:
            fib = s_d_count(f, d)
            enum = s_d_count(f, d, method="enumerate")
            c.check(fib == enum == expect == 2 * 2**d - slack_B(f), f"d = {d}: {fib}, {enum}")


def test_6_local_witness():
    with Criterion(6, "local solvability of f^n - g^n for f = 1/t, g = 1/t + 1", 1.0) as c:
        F4 = GF(2, 2)
        f = LaurentSeries.from_lpoly(parse_poly("t^-1", F4))
        g = LaurentSeries.from_lpoly(parse_poly("t^-1+1", F4))
        for n in (1, 3, 5):
            c.check(as_solvable_local(f**n - g**n).verdict == "solvable", f"n = {n}")
        r = as_solvable_local(f**7 - g**7)
        c.check(r.verdict == "unsolvable", "n = 7 should be unsolvable")
        c.check(r.reduced_principal == parse_poly("t^-5+t^-1", F4), f"principal part {r.reduced_principal}")
        F2 = GF(2)
        f2 = LaurentSeries.from_lpoly(parse_poly("t^-1", F2))
        g2 = LaurentSeries.from_lpoly(parse_poly("t^-1+1", F2))
        first = next(n for n in range(1, 20) if as_solvable_local(f2**n - g2**n).verdict == "unsolvable")
        c.check(first == 1, f"first failure over GF(2) at n = {first}")
        c.check(as_solvable_local(f2 - g2).residue == 1, "trace of the constant should be 1")


def test_7_family_variation():
    with Criterion(7, "t -> class of y^p - t*y is injective", 1.0) as c:
        for p, e in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4)]:
            ctx = GF(p, e)
            seen = set()
            for n in range(1, ctx.q):
                t = FieldElem(ctx, n)
                cls = family_class(t)
                expect = LPoly.t(ctx) * (ctx.one - t)
                c.check(cls.reduced == expect and cls.residue == 0, f"GF({ctx.q}), t = {t}")
                seen.add(cls.reduced)
            c.check(len(seen) == ctx.q - 1, f"GF({ctx.q}) not injective")


def test_8_perfection_of_rational_functions():
    with Criterion(8, "non-constant rational functions are not perfect", 30.0) as c:
        rng = random.Random(2024)
        fields = [GF(2), GF(3), GF(2, 2), GF(5), GF(7), GF(2, 3), GF(3, 2)]
        for i in range(10_000):
            ctx = fields[i % len(fields)]
            num = LPoly.from_dense(ctx, [rng.randrange(ctx.q) for _ in range(rng.randint(1, 5))])
            den = LPoly.from_dense(ctx, [rng.randrange(ctx.q) for _ in range(rng.randint(1, 5))])
            if den.is_zero():
                den = LPoly.constant(ctx, 1)
            z = RationalFn(num, den)
            res = perfection_of(z)
            if z.is_constant():
                # num = c * den, so c is the ratio of leading coefficients
                c_n = num.terms[num.degree()] if num else 0
                expect = FieldElem(ctx, ctx.mul(c_n, ctx.inv(den.terms[den.degree()])))
                c.check(res.kind == "constant" and res.constant == expect, f"{z}: {res}")
            else:
                c.check(res.kind == "not_perfect" and res.depth <= 3, f"{z}: {res}")
        for ctx in fields:
            for n in range(ctx.q):
                res = perfection_of(RationalFn(LPoly.constant(ctx, FieldElem(ctx, n))))
                c.check(res.kind == "constant" and res.constant.n == n, f"constant {n} in GF({ctx.q})")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
