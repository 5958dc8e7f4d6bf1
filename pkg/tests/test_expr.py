"""Expression surface: tokenizer, Pratt parser, canonical rendering, and the
three evaluation contexts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratskew.expr import (ExprSyntaxError, LeavittContext, SeriesContext,
                          SkewContext, eval_leavitt, eval_series, eval_skew,
                          parse_expr, render_expr)
from ratskew.fields import FunctionField, field_from_name
from ratskew.leavitt import v_equal, v_normal_form
from ratskew.linrep import LinRep
from ratskew.skew import CoeffDomain, SkewRing

QQ = field_from_name("q")
F5 = field_from_name("fp:5")


# -- parsing and rendering -------------------------------------------------------

def test_precedence_and_shape():
    assert parse_expr("1 + x0*x1") == ("add", ("num", Fraction(1)),
                                       ("mul", ("x", 0), ("x", 1)))
    assert parse_expr("(1 + x0)*x1")[0] == "mul"
    assert parse_expr("-x0^2") == ("neg", ("pow", ("x", 0), 2))
    assert parse_expr("x0 - x1 - x2") == parse_expr("(x0 - x1) - x2")
    assert parse_expr("x0*x1^2") == ("mul", ("x", 0), ("pow", ("x", 1), 2))
    assert parse_expr("2/3 * e") == ("mul", ("num", Fraction(2, 3)), ("e",))


def test_render_round_trip_pinned():
    for text, canon in [
        ("1+x0 * x1", "1 + x0*x1"),
        ("(x0+x1)^2", "(x0 + x1)^2"),
        ("- (x0 - x1)", "-(x0 - x1)"),
        ("y2*e*y1", "y2*e*y1"),
        ("3/4", "3/4"),
        ("x0^-2", "x0^-2"),
        ("t1*x0 - 2", "t1*x0 - 2"),
    ]:
        node = parse_expr(text)
        assert render_expr(node) == canon
        assert parse_expr(render_expr(node)) == node


exprs = st.recursive(
    st.one_of(
        st.integers(0, 9).map(lambda k: ("num", Fraction(k))),
        st.integers(0, 2).map(lambda i: ("x", i)),
        st.integers(1, 2).map(lambda i: ("y", i)),
        st.just(("e",)),
        st.integers(0, 1).map(lambda k: ("t", k)),
    ),
    lambda kids: st.one_of(
        st.tuples(st.just("add"), kids, kids),
        st.tuples(st.just("sub"), kids, kids),
        st.tuples(st.just("mul"), kids, kids),
        kids.map(lambda n: ("neg", n)),
        st.tuples(kids, st.integers(2, 3)).map(lambda p: ("pow", p[0], p[1])),
    ),
    max_leaves=12,
)


@given(exprs)
@settings(max_examples=150)
def test_render_parse_identity(node):
    assert parse_expr(render_expr(node)) == node


def test_error_columns():
    cases = [
        ("x0 +", 5, "unexpected end of input"),
        ("(1 - x0", 8, "expected ')'"),
        ("3/0", 3, "zero denominator"),
        ("x0 ^ y1", 6, "exponent must be an integer"),
        ("x0 x1", 4, "unexpected 'x1'"),
        ("", 1, "unexpected end of input"),
        ("x0 + * x1", 6, "unexpected '*'"),
        ("t0", 1, "indeterminates are numbered from 1"),
        ("x", 1, "letter 'x' needs an index"),
        ("1/2/3", 4, "unexpected '/'"),
    ]
    for text, col, frag in cases:
        with pytest.raises(ExprSyntaxError) as ei:
            parse_expr(text)
        assert ei.value.column == col
        assert frag in str(ei.value)
        assert str(ei.value) == "syntax error at column %d: %s" % (col, frag) or frag in str(ei.value)


def test_fraction_literals():
    assert parse_expr("2/3") == ("num", Fraction(2, 3))
    a = eval_series("1/2 + 1/3", QQ)
    assert a == LinRep.scalar(QQ, Fraction(5, 6))


# -- series context ------------------------------------------------------------------

def test_eval_series_basics():
    geo = eval_series("(1 - x0)^-1", QQ)
    assert geo == eval_series("1 + x0*(1 - x0)^-1", QQ)
    assert eval_series("(x0 + x1)^2", QQ) == eval_series("x0*x0 + x0*x1 + x1*x0 + x1*x1", QQ)


def test_series_context_guards():
    with pytest.raises(ValueError):
        eval_series("y1", QQ)
    with pytest.raises(ValueError):
        eval_series("x3", QQ, n=2)
    eval_series("x3", QQ, n=3)
    with pytest.raises(ValueError):
        eval_series("e", QQ)


def test_series_t_variables():
    K = FunctionField(2)
    s = eval_series("t1*x0 + t2^2", K)
    two = eval_series("t1*x0 + t2*t2", K)
    assert s == two
    with pytest.raises(ValueError):
        eval_series("t1", QQ)  # rationals carry no indeterminates


# -- skew context ----------------------------------------------------------------------

def test_eval_skew_relations():
    ring = SkewRing(CoeffDomain("rat", QQ), 2)
    assert eval_skew("x1*y1", ring) == ring.one()
    assert eval_skew("x1*y2", ring) == ring.zero()
    assert eval_skew("e*e - e", ring) == ring.zero()
    assert eval_skew("e + y0*x0 + y1*x1 + y2*x2", ring) == ring.one()


def test_skew_inversion_of_coefficients():
    ring = SkewRing(CoeffDomain("rat", QQ), 1)
    u = eval_skew("(1 - x0)^-1 * (1 - x0)", ring)
    assert u == ring.one()
    with pytest.raises(ValueError):
        eval_skew("(1 + y1)^-1", ring)


# -- basis-element context ---------------------------------------------------------------

def test_eval_leavitt():
    a = eval_leavitt("x1*y1", QQ, 2)
    assert v_equal(a, eval_leavitt("1", QQ, 2))
    e = eval_leavitt("e", QQ, 2)
    assert v_equal(e * e, e)
    junction = eval_leavitt("y2*x2", QQ, 2)
    assert v_normal_form(junction) == v_normal_form(eval_leavitt("1 - y1*x1", QQ, 2))


def test_leavitt_context_guards():
    with pytest.raises(ValueError):
        eval_leavitt("x0", QQ, 2)  # numbered from 1
    with pytest.raises(ValueError):
        eval_leavitt("x3", QQ, 2)
    with pytest.raises(ValueError):
        eval_leavitt("e", QQ, None)  # needs a bound
    with pytest.raises(ValueError):
        eval_leavitt("x1^-1", QQ, 2)
    assert eval_leavitt("(1/2)^-1", F5, None).coeffs[((), ())] == F5.from_fraction(Fraction(2))


def test_skew_context_objects():
    ring = SkewRing(CoeffDomain("free", F5), 1)
    ctx = SkewContext(ring)
    assert ctx.eval(parse_expr("x0*y0")) == ring.one()
    sctx = SeriesContext(QQ, 1)
    assert sctx.eval(parse_expr("x1 + 0")) == LinRep.letter(QQ, 1)
    lctx = LeavittContext(QQ, None)
    assert lctx.eval(parse_expr("x1*y1")).coeffs  # unbounded: no contraction to 1
