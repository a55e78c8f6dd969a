"""Product-of-fields rings: quasi-inverse, covers, decomposition, homs."""

import itertools

import pytest

from regsite import poly as P
from regsite.fields import make_field
from regsite.rings import (RegularRing, RingElement, ZERO_RING,
                           char_of_finite, decompose_to_fields, element_type,
                           format_ring, hom_enumerate, identity_hom,
                           parse_ring, presented_ring, principal_cover,
                           split_idempotent, star, star_by_iteration)
from regsite.errors import NotRegular, NotSplittable


def ring_elements(R):
    for comps in itertools.product(*(F.elements() for F in R.components)):
        yield RingElement(R, comps)


def test_star_axioms_small_ring():
    R = parse_ring("GF(4) x GF(3)")
    for x in ring_elements(R):
        s = star(R, x)
        assert x * x * s == x
        assert x * s * s == s
        assert star(R, s) == x
        assert s == star_by_iteration(R, x)


def test_star_uniqueness_exhaustive_small():
    R = parse_ring("GF(2) x GF(3)")
    for x in ring_elements(R):
        sols = [y for y in ring_elements(R)
                if x * x * y == x and x * y * y == y]
        assert len(sols) == 1 and sols[0] == star(R, x)


def test_principal_cover_bijection():
    R, gen = presented_ring(5, P.parse_poly("x^2-1", 5))
    a = gen - RingElement(R, tuple(F.one() for F in R.components))
    alpha, beta, w = principal_cover(R, a)
    seen = set()
    for x in ring_elements(R):
        u, v = w.split(x)
        assert w.combine(u, v) == x
        seen.add((u.comps, v.comps))
    assert len(seen) == len(list(ring_elements(R)))


def test_split_idempotent_contract():
    R = parse_ring("GF(2) x GF(3)")
    one = RingElement(R, tuple(F.one() for F in R.components))
    zero = RingElement(R, tuple(F.zero() for F in R.components))
    e = RingElement(R, (R.components[0].one(), R.components[1].zero()))
    alpha, beta = split_idempotent(R, e)
    assert {format_ring(alpha), format_ring(beta)} == {"GF(3)", "GF(2)"}
    for bad in (one, zero):
        with pytest.raises(NotSplittable):
            split_idempotent(R, bad)


def test_decompose_examples():
    dec = decompose_to_fields((2, P.parse_poly("x^2+x", 2)))
    assert format_ring(dec.ring) == "GF(2) x GF(2)"
    dec = decompose_to_fields((3, P.parse_poly("x^3+2x+1", 3)))
    orders = sorted(F.order for F in dec.ring.components)
    assert orders == [27]
    dec = decompose_to_fields((5, P.parse_poly("x^2-1", 5)))
    assert format_ring(dec.ring) == "GF(5) x GF(5)"


def test_decompose_not_squarefree():
    with pytest.raises(NotRegular):
        decompose_to_fields((3, P.parse_poly("x^2", 3)))
    with pytest.raises(NotRegular):
        decompose_to_fields((2, P.parse_poly("x^2+1", 2)))   # (x+1)^2


def test_generator_satisfies_modulus():
    f = P.parse_poly("x^3+x+1", 2) * P.parse_poly("x+1", 2)
    R, gen = presented_ring(2, f)
    acc = RingElement(R, tuple(F.zero() for F in R.components))
    for c in reversed(f.coeffs):
        cc = RingElement(R, tuple(F.element(c) for F in R.components))
        acc = acc * gen + cc
    assert acc.is_zero


def test_char_and_type():
    R, gen = presented_ring(5, P.parse_poly("x^2-1", 5))
    assert char_of_finite(R) == {5}
    tp = element_type(R, gen)
    assert tp == {P.parse_poly("x-1", 5), P.parse_poly("x+1", 5)}
    assert char_of_finite(ZERO_RING) == frozenset()


def test_hom_counts():
    # Hom(GF(p^m), GF(p^n) factors) multiply componentwise
    F4, F16, F2 = (parse_ring("GF(4)"), parse_ring("GF(16)"),
                   parse_ring("GF(2)"))
    assert len(hom_enumerate(F4, F16)) == 2
    assert len(hom_enumerate(F4, F2)) == 0
    R = parse_ring("GF(4) x GF(2)")
    S = parse_ring("GF(16) x GF(4)")
    # each target component chooses a source component and an embedding
    assert len(hom_enumerate(R, S)) == (2 + 1) * (2 + 1)
    # homs compose and the identity acts neutrally
    h = hom_enumerate(R, S)[0]
    assert h.compose(identity_hom(S))(next(ring_elements(R))) == \
        h(next(ring_elements(R)))


def test_squarefree_witness_equivalence():
    """The gcd(f, f') test agrees with the quasi-inverse witness
    x^{N+1} = x in F_p[x]/(f), N = lcm(p^d - 1, d <= deg f)."""
    from regsite.rings import _is_squarefree_witness, _regularity_exponent
    for p in (2, 3, 5):
        for d in (1, 2, 3, 4):
            for tail in itertools.product(range(p), repeat=d):
                fc = tail + (1,)
                N = _regularity_exponent(p, d)
                slow = P._powmod((0, 1), N + 1, fc, p) == \
                    P._mod((0, 1), fc, p)
                assert _is_squarefree_witness(fc, p) == slow, (fc, p)


def test_parse_format_ring_roundtrip():
    for text in ("GF(2)", "GF(4) x GF(2)", "GF(27) x GF(3) x GF(9)", "0"):
        R = parse_ring(text)
        # the literal round-trips through the canonical formatting
        assert parse_ring(format_ring(R)) == R
    assert format_ring(parse_ring("GF(4) x GF(2)")) == "GF(2) x GF(4)"
