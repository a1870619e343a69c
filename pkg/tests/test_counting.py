import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frobrig.counting import (
    break_depth,
    counting_report,
    m_set,
    s_d_count,
    slack_B,
    upper_squared,
    z_m_count,
    z_m_degree,
)
from frobrig.errors import BudgetExceeded, DegenerateGraph, InseparableMap
from frobrig.field import GF
from frobrig.parsing import parse_poly
from frobrig.poly import LPoly, derivative, squarefree_root_count

from strategies import polys_of_degree

F2, F3, F4 = GF(2), GF(3), GF(2, 2)


def P(text, ctx=F2):
    return parse_poly(text, ctx)


def _float_break_depth(df, dg, q, B):
    d = 1
    while not df * q**d - B > d * q ** (d / 2) * (df + dg):
        d += 1
    return d


# -- m_set -------------------------------------------------------------------------

def test_m_set_examples():
    assert m_set(5) == [-2, -1, 0, 1, 2]
    assert m_set(1) == [0]
    assert m_set(4) == [-1, 0, 1, 2]


@pytest.mark.parametrize("d", range(1, 101))
def test_m_set_size(d):
    ms = m_set(d)
    assert len(ms) == d
    assert all(-d < 2 * m <= d for m in ms)


# -- slack and break depth -------------------------------------------------------------

def test_slack_examples():
    assert slack_B(P("t^2+t")) == 0
    assert slack_B(P("t^2", F3)) == 1
    assert slack_B(P("t^3")) == 2
    with pytest.raises(InseparableMap):
        slack_B(P("t^2"))


def test_break_depth_examples():
    assert break_depth(2, 2, 2, 1) == 9
    assert break_depth(1, 1, 2, 0) == 9
    assert break_depth(1, 1, 2, 10**6) >= 2
    # the chain at d = 8 and d = 9
    assert (2 * 2**8 - 1) ** 2 <= upper_squared(2, 2, 2, 8)
    assert 1023**2 == 1_046_529 > upper_squared(2, 2, 2, 9) == 663_552


@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([2, 3, 4, 5, 8, 9]), st.integers(0, 20))
def test_break_depth_matches_float_evaluation(df, dg, q, B):
    d = break_depth(df, dg, q, B)
    assert d == _float_break_depth(df, dg, q, B)
    lower = df * q**d - B
    assert lower > 0 and lower * lower > upper_squared(df, dg, q, d)


# -- S_d ---------------------------------------------------------------------------------

def test_s_d_examples():
    f = P("t^2+t")
    for d, expect in [(1, 4), (2, 8), (3, 16)]:
        assert s_d_count(f, d) == expect
        assert s_d_count(f, d, method="enumerate") == expect
    for d in (1, 2, 3, 4):
        assert s_d_count(P("t"), d) == 2**d


def test_s_d_budget():
    with pytest.raises(BudgetExceeded):
        s_d_count(P("t^3+t"), 4, method="enumerate", budget=100)
    with pytest.raises(BudgetExceeded):
        s_d_count(P("t"), 8, budget=100)


def _separable_polys(ctx, max_deg):
    for deg in range(1, max_deg + 1):
        for low in itertools.product(range(ctx.p), repeat=deg):
            f = LPoly.from_dense(ctx, list(low) + [1])
            if not derivative(f).is_zero():
                yield f


@pytest.mark.parametrize("d", [1, 2, 3])
def test_lower_bound_exhaustive_f2(d):
    for f in _separable_polys(F2, 4):
        s = s_d_count(f, d)
        lower = int(f.degree()) * 2**d - slack_B(f)
        assert lower <= s
        df = derivative(f)
        if df.is_constant():
            assert lower == s


@pytest.mark.parametrize("d", [1, 2])
def test_lower_bound_exhaustive_f3(d):
    for f in _separable_polys(F3, 4):
        s = s_d_count(f, d)
        lower = int(f.degree()) * 3**d - slack_B(f)
        assert lower <= s
        if derivative(f).is_constant():
            assert lower == s


@given(st.data())
def test_lower_bound_f3_depth3(data):
    f = data.draw(polys_of_degree(F3, 1, 4))
    assume(not derivative(f).is_zero())
    s = s_d_count(f, 3)
    assert int(f.degree()) * 27 - slack_B(f) <= s


@given(st.sampled_from([F2, F3, F4]), st.data())
def test_fiber_count_matches_enumeration(ctx, data):
    f = data.draw(polys_of_degree(ctx, 1, 3))
    d = data.draw(st.integers(1, 2))
    assert s_d_count(f, d) == s_d_count(f, d, method="enumerate")


def test_base_degree_counts_over_subfield():
    # over GF(4) with Q = 2 the target points are F_{2^d}-rational values
    f = P("t^2+t", F4)
    assert s_d_count(f, 2, base_degree=1) == s_d_count(P("t^2+t"), 2)
    assert s_d_count(f, 1) == s_d_count(f, 2, base_degree=1)


# -- Z_m --------------------------------------------------------------------------------

def test_z_m_examples():
    assert z_m_degree(2, 3, 2, 1) == 8
    assert z_m_degree(2, 3, 2, -1) == 7
    assert z_m_count(P("t"), P("t+1"), 0) == (2, 0)
    f, g = P("t^2+t"), P("t^3")
    assert z_m_count(f, g, 0) == (5, squarefree_root_count(f - g))
    with pytest.raises(DegenerateGraph):
        z_m_count(P("t^2"), P("t"), 1)


@given(st.sampled_from([F2, F3, F4]), st.data())
def test_z_m_roots_bounded(ctx, data):
    f = data.draw(polys_of_degree(ctx, 1, 3))
    g = data.draw(polys_of_degree(ctx, 1, 3))
    m = data.draw(st.integers(-2, 2))
    try:
        deg, roots = z_m_count(f, g, m)
    except DegenerateGraph:
        return
    assert roots <= deg
    if m == 0:
        assert roots == squarefree_root_count(f - g)
        assert deg == f.degree() + g.degree()


# -- report ---------------------------------------------------------------------------------

def test_report_rejects_equal_maps():
    with pytest.raises(DegenerateGraph):
        counting_report(P("t^2+t"), P("t^2+t"), 2)


def test_report_frobenius_pair_is_contained():
    rep = counting_report(P("t"), P("t^2"), 4)
    assert all(row.contained for row in rep.rows)
    # g = f^q is the graph of m = -1
    assert all(row.z_roots[-1] is None for row in rep.rows if -1 in row.m_set)


def test_report_containment_fails_for_translate():
    rep = counting_report(P("t"), P("t+1"), 2)
    row = rep.rows[0]
    assert not row.contained
    w = row.witness
    assert (w.y.n, w.degree, w.f_value.n, w.g_value.n) == (0, 1, 0, 1)


def test_report_chain_columns():
    rep = counting_report(P("t^2+t"), P("t^2+t+1"), 3)
    assert (rep.q, rep.slack_B, rep.break_depth) == (2, 0, break_depth(2, 2, 2, 0))
    for row in rep.rows:
        assert row.lower == 2 * 2**row.d
        assert row.s_d >= row.lower
        assert row.upper_sq == row.d**2 * 2**row.d * 16
        assert row.z_degrees == {m: z_m_degree(2, 2, 2, m) for m in row.m_set}
    json = rep.to_json()
    assert json["rows"][0]["m_set"] == [0]
