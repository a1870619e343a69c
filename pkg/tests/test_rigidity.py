import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frobrig.counting import break_depth, slack_B
from frobrig.errors import ConstantMap, CtxMismatch
from frobrig.field import GF
from frobrig.parsing import parse_poly
from frobrig.poly import evaluate
from frobrig.rigidity import (
    MapPair,
    decide_top,
    decision_depth,
    equal_up_to_frobenius,
    h1_equal,
    theorem_crosscheck,
    top_equal,
)

from strategies import polys_of_degree, reduced_polys

F2, F3, F4 = GF(2), GF(3), GF(2, 2)


def pair(f, g, ctx=F2, r=1):
    return MapPair(parse_poly(f, ctx), parse_poly(g, ctx), r)


def closed_point_equal(y, f, g, r):
    fy, gy = evaluate(f, y), evaluate(g, y)
    Q = y.ctx.p**r
    x = fy
    for _ in range(y.ctx.e):
        if x == gy:
            return True
        x = x**Q
    return False


# -- MapPair --------------------------------------------------------------------------

def test_pair_validation():
    with pytest.raises(ConstantMap):
        pair("1", "t")
    with pytest.raises(ValueError):
        pair("t^-1", "t")
    with pytest.raises(ValueError):
        pair("t", "t^2", F4, r=3)
    with pytest.raises(CtxMismatch):
        MapPair(parse_poly("t", F2), parse_poly("t", F3))


# -- examples -----------------------------------------------------------------------------

def test_frobenius_examples():
    v = equal_up_to_frobenius(pair("t^2", "t"))
    assert v.equivalent and (v.a, v.b) == (0, 1)
    v = equal_up_to_frobenius(pair("t^3+t", "t^12+t^4"))
    assert v.equivalent and (v.a, v.b) == (2, 0)
    v = equal_up_to_frobenius(pair("t", "t+1"))
    assert not v.equivalent and v.witness is None


def test_top_examples():
    v = top_equal(pair("t", "t+1"), 1)
    assert v.kind == "not_equivalent"
    w = v.witness
    assert (w.y.n, w.f_value.n, w.g_value.n, w.depth) == (0, 0, 1, 1)
    assert top_equal(pair("t", "t^2"), 4).kind == "inconclusive"
    assert top_equal(pair("t^2+t", "t^2+t"), 4).kind == "inconclusive"


def test_h1_examples():
    v = h1_equal(pair("t", "t+1"), 1)
    assert v.kind == "not_equivalent" and v.witness.n == 1 and v.witness.cls.residue == 1
    v = h1_equal(pair("t", "2t", F3), 1)
    assert v.kind == "not_equivalent" and v.witness.n == 1
    assert v.witness.cls.reduced == parse_poly("2t", F3)
    assert h1_equal(pair("t", "t^2"), 20).kind == "inconclusive"


def test_decide_examples():
    v = decide_top(pair("t^2+t", "t^2+t+1"))
    assert v.kind == "not_equivalent" and v.depth <= 2
    w = v.witness
    assert not closed_point_equal(w.y, parse_poly("t^2+t", F2), parse_poly("t^2+t+1", F2), 1)
    v = decide_top(pair("t^2", "t"))
    assert v.equivalent and (v.a, v.b) == (0, 1)


def test_decide_depth_bound_for_quadratics():
    # two reduced quadratic cores over F_2: the witness appears by d = 9
    for g in ["t^2+t+1", "t^2+1", "t^3+t"]:
        p = pair("t^2+t", g)
        d_star, _ = decision_depth(p)
        v = decide_top(p)
        assert v.kind == "not_equivalent" and v.depth <= d_star


def test_crosscheck_examples():
    rep = theorem_crosscheck(pair("t^3+t", "t^6+t^2"), D=4, N=20)
    assert rep.consistent and rep.frobenius.equivalent
    assert rep.topological.kind == "inconclusive" and rep.h1.kind == "inconclusive"
    rep = theorem_crosscheck(pair("t", "t+1"), decide=True)
    assert not rep.frobenius.equivalent
    assert rep.topological.depth == 1 and rep.h1.witness.n == 1
    assert rep.decided.kind == "not_equivalent"
    rep = theorem_crosscheck(pair("t^2+t", "t^2+t"))
    assert (rep.frobenius.a, rep.frobenius.b) == (0, 0)
    assert set(rep.to_json()) == {"frobenius", "topological", "h1", "consistent"}


# -- soundness on constructed pairs -----------------------------------------------------------

@given(st.sampled_from([F2, F3, F4]), st.data())
def test_constructed_pairs_are_sound(ctx, data):
    core = data.draw(reduced_polys(ctx, 1, 3))
    alpha, beta = data.draw(st.integers(0, 2)), data.draw(st.integers(0, 2))
    assume(core.degree() * ctx.p ** max(alpha, beta) <= 27)
    p = MapPair(core.frobenius(alpha), core.frobenius(beta))
    v = equal_up_to_frobenius(p)
    assert v.equivalent and min(v.a, v.b) == 0
    assert p.f.frobenius(v.a) == p.g.frobenius(v.b)
    assert h1_equal(p, 50).kind == "inconclusive"
    assert top_equal(p, 2).kind == "inconclusive"


@given(st.sampled_from([F2, F3, F4]), st.data())
def test_decide_agrees_with_normal_form(ctx, data):
    f = data.draw(polys_of_degree(ctx, 1, 3))
    g = data.draw(polys_of_degree(ctx, 1, 3))
    p = MapPair(f, g)
    v = decide_top(p)
    assert v.equivalent == equal_up_to_frobenius(p).equivalent
    if not v.equivalent:
        assert v.depth <= decision_depth(p)[0]
        assert not closed_point_equal(v.witness.y, f, g, 1)


@given(st.sampled_from([F2, F3]), st.data())
def test_swap_symmetry(ctx, data):
    f = data.draw(polys_of_degree(ctx, 1, 3))
    g = data.draw(polys_of_degree(ctx, 1, 3))
    p, q = MapPair(f, g), MapPair(g, f)
    u, v = equal_up_to_frobenius(p), equal_up_to_frobenius(q)
    assert u.kind == v.kind and (u.a, u.b) == (v.b, v.a)
    assert top_equal(p, 2).kind == top_equal(q, 2).kind
    hp, hq = h1_equal(p, 12), h1_equal(q, 12)
    assert hp.kind == hq.kind
    if hp.witness is not None:
        assert hp.witness.n == hq.witness.n
    assert decide_top(p).kind == decide_top(q).kind


@given(st.sampled_from([F2, F3, F4]), st.data())
def test_fiber_and_enumeration_agree(ctx, data):
    f = data.draw(polys_of_degree(ctx, 1, 2))
    g = data.draw(polys_of_degree(ctx, 1, 2))
    p = MapPair(f, g)
    a = top_equal(p, 2)
    b = top_equal(p, 2, method="enumerate")
    assert a.kind == b.kind
    if a.kind == "not_equivalent":
        assert a.depth == b.depth


@given(st.sampled_from([F2, F3]), st.data())
def test_h1_witness_is_a_point_witness_too(ctx, data):
    # a torsor witness forces a topological one: both follow from f != g up to Frobenius
    f = data.draw(reduced_polys(ctx, 1, 3))
    g = data.draw(reduced_polys(ctx, 1, 3))
    assume(f != g)
    p = MapPair(f, g)
    if h1_equal(p, 20).kind == "not_equivalent":
        assert not equal_up_to_frobenius(p).equivalent
        assert decide_top(p).kind == "not_equivalent"


# -- base degree ----------------------------------------------------------------------------------

def test_base_degree_respects_constants():
    p1 = pair("t", "t^2", F4, r=1)
    p2 = pair("t", "t^2", F4, r=2)
    assert equal_up_to_frobenius(p1).equivalent
    assert not equal_up_to_frobenius(p2).equivalent
    assert top_equal(p1, 3).kind == "inconclusive"
    v = top_equal(p2, 1)
    assert v.kind == "not_equivalent" and v.witness.y.ctx.e == 2
    assert h1_equal(p1, 20).kind == "inconclusive"
    assert h1_equal(p2, 1).kind == "not_equivalent"
    assert decide_top(p2).kind == "not_equivalent"
    v = equal_up_to_frobenius(pair("t", "t^4", F4, r=2))
    assert v.equivalent and (v.a, v.b) == (2, 0)


def test_gf4_twist_with_odd_exponent():
    # w*t and its square are equivalent once the target is the line over F_2
    v = equal_up_to_frobenius(pair("w*t+1", "(w+1)*t^2+1", F4))
    assert v.equivalent and (v.a, v.b) == (1, 0)
    assert top_equal(pair("w*t+1", "(w+1)*t^2+1", F4), 2).kind == "inconclusive"


def test_decision_depth_uses_break_depth():
    p = pair("t^2+t", "t^3+t")
    d_star, swap = decision_depth(p)
    expect = min(break_depth(2, 3, 2, slack_B(p.f)), break_depth(3, 2, 2, slack_B(p.g)))
    assert d_star == expect
