import pytest
from hypothesis import given
from hypothesis import strategies as st

from homcat.laurent import NEG_INF, ONE, V, ZERO, LaurentPoly, format_laurent, parse_laurent

polys = st.builds(
    LaurentPoly,
    st.lists(st.integers(-5, 5), max_size=6),
    st.integers(-6, 6),
)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO == p and p * ONE == p
    assert p - p == ZERO


@given(polys, polys)
def test_bar_is_ring_involution(p, q):
    assert p.bar().bar() == p
    assert (p + q).bar() == p.bar() + q.bar()
    assert (p * q).bar() == p.bar() * q.bar()


@given(polys)
def test_text_round_trip(p):
    assert parse_laurent(format_laurent(p)) == p


@given(polys)
def test_normal_form_hash(p):
    q = LaurentPoly.from_dict(p.to_dict())
    assert q == p and hash(q) == hash(p)


@given(polys, polys)
def test_degree_of_product(p, q):
    if p and q:
        assert (p * q).degree == p.degree + q.degree
    else:
        assert (p * q).degree is NEG_INF


def test_format_examples():
    assert format_laurent(V**3 + 2 * V + 2 * V.bar() + V.bar() ** 3) == "v^3+2v+2v^-1+v^-3"
    assert format_laurent(ZERO) == "0"
    assert format_laurent(-V) == "-v"
    assert parse_laurent("v^{-2} - 3") == LaurentPoly.from_dict({-2: 1, 0: -3})


def test_neg_inf_orders_below_integers():
    assert NEG_INF < -(10**9)
    assert max(NEG_INF, 0) == 0
    assert ZERO.degree is NEG_INF


@pytest.mark.parametrize("bad", ["", "v^", "2v3", "x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_laurent(bad)


def test_leading_zeros_trimmed():
    p = LaurentPoly((0, 0, 1, 0), -2)
    assert p == ONE and p.valuation == 0 and p.degree == 0
