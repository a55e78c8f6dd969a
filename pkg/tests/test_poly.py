"""Polynomial layer: parsing, arithmetic, gcd, irreducibility, factoring."""

import pytest
from hypothesis import given, settings, strategies as st

from regsite import poly as P
from regsite.errors import InvalidModulus, InvalidPolynomial, ZeroPolynomial

PRIMES = (2, 3, 5, 7)


def coeff_polys(p, max_deg=5):
    return st.lists(st.integers(0, p - 1), max_size=max_deg + 1).map(
        lambda c: P.Poly(tuple(c), p))


# -- parsing / formatting ---------------------------------------------------

def test_parse_examples():
    f = P.parse_poly("x^3+2x+1", 5)
    assert f.coeffs == (1, 2, 0, 1)
    assert P.parse_poly("x^2 - 1", 3).coeffs == (2, 0, 1)
    assert P.parse_poly("7", 5).coeffs == (2,)
    assert P.parse_poly("0", 5).is_zero


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_format_parse_roundtrip(p, data):
    f = data.draw(coeff_polys(p))
    assert P.parse_poly(P.format_poly(f), p) == f


# -- arithmetic -------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_divmod_identity(p, data):
    f = data.draw(coeff_polys(p))
    g = data.draw(coeff_polys(p).filter(lambda g: not g.is_zero))
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_gcd_divides_both(p, data):
    f = data.draw(coeff_polys(p))
    g = data.draw(coeff_polys(p))
    if f.is_zero and g.is_zero:
        return
    d = P.poly_gcd(f, g, p)
    for h in (f, g):
        if not h.is_zero:
            assert divmod(h, d)[1].is_zero
    assert d.is_monic


def test_squarefree_part():
    p = 5
    f = P.parse_poly("x^2", p) * P.parse_poly("x+1", p)
    sf = P.squarefree_part(f, p)
    assert sf == P.parse_poly("x^2+x", p)


# -- irreducibility ---------------------------------------------------------

def brute_irreducible(f, p):
    """Trial division by every smaller-degree monic polynomial."""
    import itertools
    if f.degree < 1:
        return False
    for d in range(1, f.degree):
        for tail in itertools.product(range(p), repeat=d):
            g = P.Poly(tail + (1,), p)
            if divmod(f, g)[1].is_zero:
                return False
    return True


def test_is_irreducible_vs_brute_force():
    import itertools
    for p in (2, 3):
        for deg in (1, 2, 3, 4):
            for tail in itertools.product(range(p), repeat=deg):
                f = P.Poly(tail + (1,), p)
                assert P.is_irreducible(f, p) == brute_irreducible(f, p), f


def test_enumeration_ordering_and_canonical_least():
    irr = P.enumerate_irreducibles(2, 3)
    keys = [f.sort_key() for f in irr]
    assert keys == sorted(keys)
    assert irr[0] == P.parse_poly("x", 2)
    # degree-2 entries of the enumeration are exactly the irreducible ones
    deg2 = [f for f in irr if f.degree == 2]
    assert deg2 == [P.parse_poly("x^2+x+1", 2)]


def test_factor_distinct_recovers_factors():
    p = 3
    f = P.parse_poly("x", p) * P.parse_poly("x+1", p) * \
        P.parse_poly("x^2+1", p)
    fac = P.factor_distinct(f, p)
    assert fac == {P.parse_poly("x", p), P.parse_poly("x+1", p),
                   P.parse_poly("x^2+1", p)}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_factor_distinct_properties(p, data):
    f = data.draw(coeff_polys(p, 5).filter(lambda g: g.degree >= 1))
    fac = P.factor_distinct(f, p)
    prod = P.constant(1, p)
    for q in fac:
        assert P.is_irreducible(q, p)
        assert divmod(f, q)[1].is_zero
        prod = prod * q
    # the product of the distinct factors is the squarefree part (monic f)
    fm = P.Poly(f.coeffs, p)
    if fm.is_monic:
        assert prod == P.squarefree_part(fm, p)


# -- error contracts ---------------------------------------------------------

def test_errors():
    with pytest.raises(InvalidModulus):
        P.enumerate_irreducibles(4, 2)
    with pytest.raises(ZeroPolynomial):
        P.factor_distinct(P.Poly((), 3), 3)
    with pytest.raises(InvalidPolynomial):
        P.enumerate_irreducibles(3, 0)
    with pytest.raises(InvalidPolynomial):
        P.parse_poly("x^^2", 3)
