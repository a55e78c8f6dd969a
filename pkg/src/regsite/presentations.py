"""Characteristic and type sets of univariate regular-ring presentations.

A presentation describes the regular ring generated by one element x
subject to: an additive modulus n (n.1 = 0), polynomial relations
g_i(x) = 0, and invertibility constraints u u* = 1 for chosen integer
polynomials u and primes p.

The characteristic set of such a ring is either finite without 0 or
cofinite with 0; ``char_set`` computes it below a prime bound together
with an integer certificate witnessing the dichotomy (all exceptional
primes divide the certificate).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import poly as P
from .errors import DichotomyViolation, EmptyFiber
from .poly import Poly, parse_poly


# ---------------------------------------------------------------------------
# exact rational polynomial helpers (coefficient lists of Fractions)


def _frac(f: Poly) -> list:
    return [Fraction(c) for c in f.coeffs]


def _ftrim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _fdivmod(a: list, b: list) -> tuple:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        q[len(a) - len(b)] = f
        for i in range(len(b)):
            a[len(a) - len(b) + i] -= f * b[i]
        _ftrim(a)
    return q, a


def _fmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _fgcd(a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, _fdivmod(a, b)[1]
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def content(f: Poly) -> int:
    return math.gcd(*(abs(c) for c in f.coeffs)) if f.coeffs else 0


def primitive(f: Poly) -> Poly:
    c = content(f)
    if not c:
        return f
    sign = 1 if f.coeffs[-1] > 0 else -1
    return Poly(tuple(x // (sign * c) for x in f.coeffs), 0)


def _to_int_poly(c: list) -> Poly:
    """Clear denominators and normalize to a primitive integer polynomial."""
    if not c:
        return Poly((), 0)
    den = math.lcm(*(x.denominator for x in c))
    return primitive(Poly(tuple(int(x * den) for x in c), 0))


def q_gcd(f: Poly, g: Poly) -> Poly:
    """Gcd over Q as a primitive integer polynomial."""
    return _to_int_poly(_fgcd(_frac(f), _frac(g)))


def q_gcd_list(polys) -> Poly:
    acc = Poly((), 0)
    for f in polys:
        acc = q_gcd(acc, f)
    return acc


def q_div(f: Poly, g: Poly) -> Poly:
    """Exact quotient f/g over Q (primitive integer result)."""
    q, r = _fdivmod(_frac(f), _frac(g))
    if _ftrim(list(r)):
        raise ValueError(f"{g} does not divide {f} over Q")
    return _to_int_poly(q)


def int_derivative(f: Poly) -> Poly:
    return Poly(tuple(i * f.coeffs[i] for i in range(1, len(f.coeffs))), 0)


def squarefree_q(f: Poly) -> Poly:
    """Squarefree part over Q as a primitive integer polynomial."""
    if f.degree < 1:
        return primitive(f)
    return q_div(primitive(f), q_gcd(f, int_derivative(f)))


def resultant(f: Poly, g: Poly) -> int:
    """Resultant of integer polynomials via the Sylvester determinant."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    mat = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, size):
            if mat[r][col]:
                fmul = mat[r][col] * inv
                for c in range(col, size):
                    mat[r][c] -= fmul * mat[col][c]
    assert det.denominator == 1
    return int(det)


def bezout_integer(polys) -> int:
    """A nonzero integer in the Z[x]-ideal generated by integer polynomials
    whose gcd over Q is 1."""
    polys = [f for f in polys if not f.is_zero]
    if not polys:
        raise ValueError("empty family")
    if any(f.degree == 0 for f in polys):
        return min(abs(f.coeffs[0]) for f in polys if f.degree == 0)
    # extended Euclid chain over Q: track combination of the first ones
    g = _frac(polys[0])
    comb = [[Fraction(1)]] + [[] for _ in polys[1:]]
    for idx in range(1, len(polys)):
        h = _frac(polys[idx])
        # ext gcd of g and h
        r0, r1 = g, h
        s0, s1 = [Fraction(1)], []
        t0, t1 = [], [Fraction(1)]
        while _ftrim(list(r1)):
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, _ftrim(r)
            s0, s1 = s1, _ftrim([a - b for a, b in
                                 zip(s0 + [Fraction(0)] * len(_fmul(q, s1)),
                                     _fmul(q, s1) + [Fraction(0)] * len(s0))])
            t0, t1 = t1, _ftrim([a - b for a, b in
                                 zip(t0 + [Fraction(0)] * len(_fmul(q, t1)),
                                     _fmul(q, t1) + [Fraction(0)] * len(t0))])
        # r0 = s0 * g + t0 * h
        comb = [_fmul(s0, c) for c in comb]
        comb[idx] = t0
        g = r0
        if len(_ftrim(list(g))) == 1:
            break
    g = _ftrim(list(g))
    if len(g) != 1:
        raise ValueError("family gcd over Q is not 1")
    # sum comb_i * polys_i = g (a constant); clear denominators
    dens = [x.denominator for c in comb for x in c] or [1]
    L = math.lcm(*dens)
    val = g[0] * L
    assert val.denominator == 1 and val != 0
    return abs(int(val))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    modulus_n: int = 0
    relations: tuple = ()
    invert_polys: tuple = ()
    invert_primes: frozenset = frozenset()

    def nonzero_relations(self) -> tuple:
        return tuple(r for r in self.relations if not r.is_zero)

    def with_relation(self, a: Poly) -> "Presentation":
        return Presentation(self.modulus_n, self.relations + (a,),
                            self.invert_polys, self.invert_primes)

    def with_inverted(self, a: Poly) -> "Presentation":
        return Presentation(self.modulus_n, self.relations,
                            self.invert_polys + (a,), self.invert_primes)

    def describe(self) -> str:
        parts = []
        if self.modulus_n:
            parts.append(f"{self.modulus_n}=0")
        parts += [f"{r}=0" for r in self.relations]
        parts += [f"({u}) invertible" for u in self.invert_polys]
        parts += [f"{p} invertible" for p in sorted(self.invert_primes)]
        return "; ".join(parts) if parts else "free on one generator"


def presentation_from_dict(d: dict) -> Presentation:
    return Presentation(
        modulus_n=int(d.get("modulus_n", 0)),
        relations=tuple(parse_poly(s) if isinstance(s, str) else Poly(tuple(s), 0)
                        for s in d.get("relations", ())),
        invert_polys=tuple(parse_poly(s) if isinstance(s, str) else Poly(tuple(s), 0)
                           for s in d.get("invert_polys", ())),
        invert_primes=frozenset(int(p) for p in d.get("invert_primes", ())),
    )


def presentation_to_dict(pres: Presentation) -> dict:
    return {
        "modulus_n": pres.modulus_n,
        "relations": [str(r) for r in pres.relations],
        "invert_polys": [str(u) for u in pres.invert_polys],
        "invert_primes": sorted(pres.invert_primes),
    }


def load_presentation(path: str) -> Presentation:
    with open(path) as fh:
        return presentation_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# membership


def _divides_mod(h: Poly, u: Poly, p: int) -> bool:
    """h | u over Z/p, with the zero polynomial divisible by everything."""
    uc = P._reduce(u.coeffs, p)
    if not uc:
        return True
    return not P._mod(uc, P._reduce(h.coeffs, p), p)


def member_char_p(pres: Presentation, p: int) -> bool:
    """p is in the characteristic set iff the mod-p fiber is non-degenerate."""
    P._require_prime(p)
    if p in pres.invert_primes:
        return False
    if pres.modulus_n and pres.modulus_n % p:
        return False
    reduced = [Poly(P._reduce(r.coeffs, p), p) for r in pres.relations]
    if any(r.degree == 0 for r in reduced):
        return False
    nonzero = [r for r in reduced if not r.is_zero]
    if not nonzero:
        # free generator: witness field F_p(t) unless some u is forced to 0
        return all(P._reduce(u.coeffs, p) for u in pres.invert_polys)
    g_eff = nonzero[0]
    for r in nonzero[1:]:
        g_eff = P.poly_gcd(g_eff, r, p)
    if g_eff.degree == 0:
        return False
    sf = P.squarefree_part(g_eff, p)
    for h in P.factor_distinct(sf, p):
        if not any(_divides_mod(h, u, p) for u in pres.invert_polys):
            return True
    return False


def _char_zero_analysis(pres: Presentation):
    """(member, g_tilde, residue, cofactors): the rational-gcd decision data."""
    nonzero = pres.nonzero_relations()
    if pres.modulus_n:
        return False, None, None, None
    if not nonzero:
        ok = all(not u.is_zero for u in pres.invert_polys)
        return ok, None, None, None
    g = q_gcd_list(nonzero)
    if g.degree < 1:
        return False, None, None, None
    g_tilde = squarefree_q(g)
    residue = g_tilde
    for u in pres.invert_polys:
        if u.is_zero:
            return False, g_tilde, None, None
        while residue.degree >= 1:
            d = q_gcd(residue, u)
            if d.degree < 1:
                break
            residue = q_div(residue, d)
    cofactors = [q_div(primitive(r), g) for r in nonzero]
    return residue.degree >= 1, g_tilde, residue, cofactors


def member_char_zero(pres: Presentation) -> bool:
    """0 is in the characteristic set iff a char-0 field quotient exists."""
    return _char_zero_analysis(pres)[0]


# ---------------------------------------------------------------------------
# characteristic sets with dichotomy certificates


@dataclass(frozen=True)
class CharSet:
    contains_zero: bool
    primes_in: frozenset
    bound: int
    certificate: str  # "finite-without-zero" | "cofinite-with-zero"
    certificate_integer: int

    def members_below(self) -> set:
        out = set(self.primes_in)
        if self.contains_zero:
            out.add(0)
        return out

    def describe(self) -> str:
        if self.contains_zero:
            missing = sorted(p for p in _primes_upto(self.bound)
                             if p not in self.primes_in)
            body = "{0} u P" + ("\\" + "{" + ",".join(map(str, missing)) + "}"
                                if missing else "")
        else:
            body = "{" + ",".join(map(str, sorted(self.primes_in))) + "}"
        kind = "cofinite" if self.contains_zero else "finite"
        return (f"{body} [{kind}, certified by N={self.certificate_integer}, "
                f"checked to B={self.bound}]")


def _primes_upto(B: int):
    return [p for p in range(2, B + 1) if P.is_prime(p)]


def char_set(pres: Presentation, B: int) -> CharSet:
    if B < 2:
        raise ValueError("bound must be >= 2")
    zero, g_tilde, residue, cofactors = _char_zero_analysis(pres)
    primes_in = frozenset(p for p in _primes_upto(B) if member_char_p(pres, p))
    nonzero = pres.nonzero_relations()
    N = 1
    for q in pres.invert_primes:
        N *= q
    for u in pres.invert_polys:
        if not u.is_zero:
            N *= max(content(u), 1)
    if zero:
        if residue is not None:
            t = residue
            N *= abs(t.coeffs[-1]) * abs(g_tilde.coeffs[-1])
            if t.degree >= 1:
                N *= max(abs(resultant(t, int_derivative(t))), 1)
            for u in pres.invert_polys:
                N *= max(abs(resultant(t, u)), 1)
            for r in nonzero:
                N *= max(content(r), 1)
        cert = "cofinite-with-zero"
        for p in _primes_upto(B):
            if p not in pres.invert_primes and N % p and p not in primes_in:
                raise DichotomyViolation(
                    f"certificate N={N} claims {p} is a member but it is not "
                    f"({pres.describe()})")
    else:
        if pres.modulus_n:
            N *= abs(pres.modulus_n)
        elif nonzero:
            g = q_gcd_list(nonzero)
            if g.degree >= 1:
                gt = squarefree_q(g)
                N *= abs(gt.coeffs[-1]) * abs(g.coeffs[-1])
                N *= max(abs(resultant(gt, int_derivative(gt))), 1)
                for u in pres.invert_polys:
                    if u.is_zero:
                        continue
                    stripped = gt
                    while stripped.degree >= 1:
                        d = q_gcd(stripped, u)
                        if d.degree < 1:
                            break
                        stripped = q_div(stripped, d)
                    if stripped.degree >= 0 and not stripped.is_zero:
                        N *= max(abs(resultant(stripped, u)), 1)
                if cofactors is None:
                    cofactors = [q_div(primitive(r), g) for r in nonzero]
                try:
                    N *= bezout_integer(cofactors)
                except ValueError:
                    pass
                for r in nonzero:
                    N *= max(content(r), 1)
            else:
                # relations are coprime over Q: any prime with a common root
                # mod p divides an integer in the ideal they generate
                N *= bezout_integer([primitive(r) for r in nonzero])
                for r in nonzero:
                    N *= max(content(r), 1)
        cert = "finite-without-zero"
        for p in primes_in:
            if N % p:
                raise DichotomyViolation(
                    f"member {p} does not divide certificate N={N} "
                    f"({pres.describe()})")
    return CharSet(zero, primes_in, B, cert, N)


# ---------------------------------------------------------------------------
# type sets


@dataclass(frozen=True)
class TypeSet:
    p: int
    contains_infinity: bool
    polys_in: frozenset
    degree_bound: int


def type_set(pres: Presentation, p: int, D: int) -> TypeSet:
    if not member_char_p(pres, p):
        raise EmptyFiber(f"{p} is not in the characteristic set")
    reduced = [Poly(P._reduce(r.coeffs, p), p) for r in pres.relations]
    nonzero = [r for r in reduced if not r.is_zero]
    if not nonzero:
        members = frozenset(
            f for f in P.enumerate_irreducibles(p, D)
            if not any(_divides_mod(f, u, p) for u in pres.invert_polys))
        return TypeSet(p, True, members, D)
    g_eff = nonzero[0]
    for r in nonzero[1:]:
        g_eff = P.poly_gcd(g_eff, r, p)
    sf = P.squarefree_part(g_eff, p)
    members = frozenset(
        h for h in P.factor_distinct(sf, p)
        if not any(_divides_mod(h, u, p) for u in pres.invert_polys))
    return TypeSet(p, False, members, D)


# ---------------------------------------------------------------------------
# cover-union law and T_A sieves


@dataclass(frozen=True)
class CoverUnionReport:
    base: CharSet
    vanishing: CharSet      # Char(R/(a))
    inverted: CharSet       # Char(R/(aa*-1))
    passed: bool

    def describe(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return (f"Char(R)={sorted(self.base.members_below())} vs "
                f"Char(R/(a))={sorted(self.vanishing.members_below())} u "
                f"Char(R/(aa*-1))={sorted(self.inverted.members_below())}: {verdict}")


def cover_union_check(pres: Presentation, a: Poly, B: int) -> CoverUnionReport:
    """Finite shadow of the cover-union law along the principal cover at a."""
    base = char_set(pres, B)
    vanishing = char_set(pres.with_relation(a), B)
    inverted = char_set(pres.with_inverted(a), B)
    passed = (base.members_below() ==
              vanishing.members_below() | inverted.members_below())
    return CoverUnionReport(base, vanishing, inverted, passed)


def t_sieve_member(pres: Presentation, A, B: int) -> str:
    """Is Char(R) contained in A (a finite set of primes, optionally with 0)?

    Returns "yes", "no", or "unknown-beyond-bound".
    """
    A = set(A)
    cs = char_set(pres, B)
    if cs.contains_zero:
        # cofinite characteristic set can never fit inside a finite A
        return "no"
    if not cs.primes_in <= A:
        return "no"
    residual = cs.certificate_integer
    for p in _primes_upto(B):
        while residual % p == 0:
            residual //= p
    if residual == 1:
        return "yes"
    # certificate has prime factors beyond the bound; membership there unknown
    return "unknown-beyond-bound"
