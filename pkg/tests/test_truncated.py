"""Truncated series windows: the precision bookkeeping that makes this
backend a trustworthy oracle for everything of bounded length."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from ratskew.fields import QQ, field_from_name
from ratskew.freealg import FreeElem
from ratskew.truncated import DEFAULT_PRECISION, TruncSeries

F7 = field_from_name("fp:7")


def rand_poly(rng, field, nletters=2, terms=3, maxlen=3):
    out = FreeElem.zero(field)
    for _ in range(rng.randint(1, terms)):
        w = tuple(rng.randrange(nletters) for _ in range(rng.randint(0, maxlen)))
        out = out + FreeElem.word(field, w, field.random(rng))
    return out


def test_default_precision():
    assert TruncSeries.one(QQ).precision == DEFAULT_PRECISION


def test_from_free_truncates():
    p = FreeElem.word(QQ, (0,) * 5, QQ.one()) + FreeElem.one(QQ)
    t = TruncSeries.from_free(p, 4)
    assert t.coeffs == {(): QQ.one()}


def test_mul_keeps_min_precision_and_matches_polynomials():
    rng = random.Random(3)
    for _ in range(40):
        p, q = rand_poly(rng, QQ), rand_poly(rng, QQ)
        a = TruncSeries.from_free(p, 9)
        b = TruncSeries.from_free(q, 7)
        c = a * b
        assert c.precision == 7
        exact = p * q
        for w, v in c.coeffs.items():
            if len(w) < 7:
                assert v == exact.coeff(w)
        for w in exact.coeffs:
            if len(w) < 7:
                assert c.coeffs.get(w, QQ.zero()) == exact.coeff(w)


def test_add_keeps_min_precision():
    a = TruncSeries.one(QQ, 5)
    b = TruncSeries.letter(QQ, 0, 12)
    assert (a + b).precision == 5


def test_delta_costs_one_letter_of_precision():
    rng = random.Random(7)
    for _ in range(30):
        p = rand_poly(rng, QQ)
        t = TruncSeries.from_free(p, 6)
        d = t.delta(1)
        assert d.precision == 5
        exact = p.delta(1)
        for w in set(list(d.coeffs) + list(exact.coeffs)):
            if len(w) < 5:
                assert d.coeffs.get(w, QQ.zero()) == exact.coeff(w)


def test_inverse_keeps_precision_and_is_two_sided_in_window():
    rng = random.Random(11)
    one = TruncSeries.one(QQ, 8)
    for _ in range(25):
        p = rand_poly(rng, QQ)
        u = TruncSeries.from_free(p, 8)
        u = one + (u - TruncSeries.scalar(QQ, u.tau(), 8))  # unit constant term
        v = u.inv()
        assert v.precision == 8
        assert u * v == one
        assert v * u == one


def test_inverse_requires_unit():
    with pytest.raises(ValueError):
        TruncSeries.letter(QQ, 0, 6).inv()


def test_equality_compares_common_window():
    a = TruncSeries.from_free(FreeElem.one(QQ), 4)
    b = a + TruncSeries.word(QQ, (0,) * 5, QQ.one(), 9)
    # the extra term lies beyond a's window, so the two are indistinguishable
    assert a == b
    c = a + TruncSeries.word(QQ, (0,) * 3, QQ.one(), 9)
    assert a != c


def test_geometric_series_coefficients():
    one = TruncSeries.one(QQ, 7)
    x0 = TruncSeries.letter(QQ, 0, 7)
    g = (one - x0).inv()
    for k in range(7):
        assert g.coeffs.get((0,) * k) == QQ.one()
    assert all(set(w) <= {0} for w in g.coeffs)


@pytest.mark.parametrize("field", [QQ, F7], ids=lambda f: f.name)
def test_tau_and_scale(field):
    rng = random.Random(13)
    for _ in range(20):
        p = rand_poly(rng, field)
        t = TruncSeries.from_free(p, 6)
        assert t.tau() == p.tau()
        c = field.random(rng)
        assert t.scale(c).coeffs == {w: v * c for w, v in t.coeffs.items() if v * c}
