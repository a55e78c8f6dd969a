"""Characteristic/type-set calculus for one-generator presentations."""

import json

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from regsite import poly as P
from regsite.presentations import (CharSet, Presentation, bezout_integer,
                                   char_set, content, cover_union_check,
                                   load_presentation, member_char_p,
                                   member_char_zero, presentation_from_dict,
                                   presentation_to_dict, q_gcd, resultant,
                                   t_sieve_member, type_set)
from regsite.errors import EmptyFiber


def ip(*coeffs):
    return P.Poly(tuple(coeffs), 0)


def to_sympy(f):
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f.coeffs)) or [0], x)


int_polys = st.lists(st.integers(-9, 9), max_size=5).map(
    lambda c: P.Poly(tuple(c), 0))


# -- rational-coefficient utilities vs sympy oracles -------------------------

@settings(max_examples=60, deadline=None)
@given(int_polys, int_polys)
def test_resultant_vs_sympy(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == int(sympy.resultant(to_sympy(f).as_expr(),
                                                  to_sympy(g).as_expr()))


@settings(max_examples=60, deadline=None)
@given(int_polys, int_polys)
def test_q_gcd_vs_sympy(f, g):
    if f.is_zero and g.is_zero:
        return
    ours = q_gcd(f, g)
    theirs = sympy.gcd(to_sympy(f).as_expr(), to_sympy(g).as_expr())
    # compare primitive monic-normalized forms
    tp = sympy.Poly(theirs, sympy.Symbol("x"))
    assert ours.degree == tp.degree()


@settings(max_examples=40, deadline=None)
@given(st.lists(int_polys.filter(lambda f: not f.is_zero),
                min_size=1, max_size=3))
def test_bezout_integer_is_in_the_ideal(polys):
    g = polys[0]
    for f in polys[1:]:
        g = q_gcd(g, f)
    if g.degree >= 1:
        with pytest.raises(ValueError):
            bezout_integer(polys)
        return
    n = bezout_integer(polys)
    assert n > 0
    # n lies in the ideal: it must vanish wherever all the polys do
    for prime in (2, 3, 5, 7, 11):
        for a in range(prime):
            if all(f(a) % prime == 0 for f in polys):
                assert n % prime == 0


def test_content():
    assert content(ip(6, 9, 3)) == 3
    assert content(ip(0)) == 0


# -- membership --------------------------------------------------------------

def test_member_char_p_cases():
    # no relations: every characteristic admits a field
    free = Presentation(0, (), (), ())
    assert all(member_char_p(free, p) for p in (2, 3, 5, 7))
    assert member_char_zero(free)
    # x^2+1 = 0: solvable in an extension for every p
    gauss = Presentation(0, (ip(1, 0, 1),), (), ())
    assert all(member_char_p(gauss, p) for p in (2, 3, 5, 7))
    # relation 6 = 0 forces p | 6
    six = Presentation(6, (), (), ())
    assert {p for p in range(2, 50) if P.is_prime(p)
            and member_char_p(six, p)} == {2, 3}
    assert not member_char_zero(six)
    # inverting x while requiring x = 0 is impossible
    clash = Presentation(0, (ip(0, 1),), (ip(0, 1),), ())
    assert not any(member_char_p(clash, p) for p in (2, 3, 5))
    assert not member_char_zero(clash)
    # inverted primes are excluded
    inv2 = Presentation(0, (), (), (2,))
    assert not member_char_p(inv2, 2) and member_char_p(inv2, 3)


def test_char_set_examples():
    cs = char_set(Presentation(6, (), (), ()), 50)
    assert cs.members_below() == {2, 3}
    assert cs.certificate == "finite-without-zero"

    cs = char_set(Presentation(0, (), (), (2,)), 50)
    assert cs.contains_zero and 2 not in cs.primes_in
    assert 3 in cs.primes_in and cs.certificate == "cofinite-with-zero"

    # x^2-2 and x^2-3 are coprime over Q; only finitely many p remain
    cs = char_set(Presentation(0, (ip(-2, 0, 1), ip(-3, 0, 1)), (), ()), 50)
    assert not cs.contains_zero
    assert all(n == 0 or n > 0 for n in [cs.certificate_integer])
    for p in cs.primes_in:
        assert member_char_p(
            Presentation(0, (ip(-2, 0, 1), ip(-3, 0, 1)), (), ()), p)


def test_char_set_members_match_pointwise():
    pres = Presentation(0, (ip(1, 0, 1),), (ip(1, 1),), (3,))
    cs = char_set(pres, 60)
    for p in range(2, 61):
        if P.is_prime(p):
            assert (p in cs.primes_in) == member_char_p(pres, p)
    assert cs.contains_zero == member_char_zero(pres)


def test_type_set():
    pres = Presentation(0, (ip(1, 0, 1),), (), ())   # x^2 + 1 = 0
    ts = type_set(pres, 5, 3)
    assert not ts.contains_infinity
    assert ts.polys_in == {P.parse_poly("x+2", 5), P.parse_poly("x+3", 5)}
    ts = type_set(Presentation(0, (), (ip(0, 1),), ()), 2, 2)
    assert ts.contains_infinity
    assert P.parse_poly("x", 2) not in ts.polys_in
    assert P.parse_poly("x+1", 2) in ts.polys_in
    with pytest.raises(EmptyFiber):
        type_set(Presentation(6, (), (), ()), 5, 2)


def test_cover_union_and_tsieve():
    pres = Presentation(0, (ip(1, 0, 1),), (), ())
    rep = cover_union_check(pres, ip(-1, 1), 100)
    assert rep.passed
    assert t_sieve_member(Presentation(6, (), (), ()), {2, 3}, 50) == "yes"
    assert t_sieve_member(Presentation(6, (), (), ()), {2}, 50) == "no"
    assert t_sieve_member(Presentation(0, (), (), ()), {2, 3, 0}, 50) == "no"


def test_json_roundtrip(tmp_path):
    pres = Presentation(6, (ip(1, 0, 1),), (ip(0, 1),), frozenset({5}))
    d = presentation_to_dict(pres)
    assert presentation_from_dict(json.loads(json.dumps(d))) == pres
    path = tmp_path / "p.json"
    path.write_text(json.dumps(d))
    assert load_presentation(str(path)) == pres
