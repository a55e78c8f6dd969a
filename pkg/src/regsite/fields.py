"""Finite fields F_{p^n} as quotients by a canonical irreducible.

The canonical modulus of F_{p^n} is the lexicographically least monic
irreducible of degree n, comparing coefficient tuples (c_{n-1}, ..., c_0)
ascending.  Embeddings are computed per pair of fields by exhaustive root
search, not via a compatible tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import poly as P
from .errors import InvalidPolynomial
from .poly import Poly


@dataclass(frozen=True)
class FiniteField:
    p: int
    n: int
    modulus: Poly

    @property
    def order(self) -> int:
        return self.p ** self.n

    def zero(self) -> "FieldElement":
        return FieldElement(self, ())

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,))

    def generator(self) -> "FieldElement":
        """The class of x (a root of the defining modulus)."""
        return self.element(Poly((0, 1), self.p))

    def element(self, rep) -> "FieldElement":
        if isinstance(rep, Poly):
            rep = rep.coeffs
        elif isinstance(rep, int):
            rep = (rep,)
        c = P._mod(P._reduce(rep, self.p), self.modulus.coeffs, self.p)
        return FieldElement(self, c)

    def elements(self):
        for tup in itertools.product(range(self.p), repeat=self.n):
            yield FieldElement(self, P._trim(list(tup)))

    def __str__(self) -> str:
        return format_field(self)

    def __repr__(self) -> str:
        return format_field(self)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    rep: tuple  # coefficient tuple of degree < n, trailing zeros trimmed

    def _binop(self, other, fn):
        if self.field != other.field:
            raise InvalidPolynomial("elements of different fields")
        p = self.field.p
        return FieldElement(self.field, fn(self.rep, other.rep, p))

    def __add__(self, other):
        return self._binop(other, P._add)

    def __sub__(self, other):
        return self._binop(other, P._sub)

    def __neg__(self):
        return FieldElement(self.field, P._scale(self.rep, -1, self.field.p))

    def __mul__(self, other):
        if self.field != other.field:
            raise InvalidPolynomial("elements of different fields")
        p = self.field.p
        c = P._mod(P._mul(self.rep, other.rep, p), self.field.modulus.coeffs, p)
        return FieldElement(self.field, c)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        c = P._powmod(self.rep, e, self.field.modulus.coeffs, self.field.p)
        return FieldElement(self.field, c)

    def inverse(self) -> "FieldElement":
        if not self.rep:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.order - 2)

    @property
    def is_zero(self) -> bool:
        return not self.rep

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def poly(self) -> Poly:
        return Poly(self.rep, self.field.p)

    def __str__(self) -> str:
        return P.format_poly(self.poly())

    def __repr__(self) -> str:
        return f"<{self} in {self.field}>"


@lru_cache(maxsize=None)
def make_field(p: int, n: int) -> FiniteField:
    """F_{p^n} with the canonical (lex-least) irreducible modulus."""
    P._require_prime(p)
    if n < 1:
        raise InvalidPolynomial("field degree must be >= 1")
    if n == 1:
        return FiniteField(p, 1, Poly((0, 1), p))
    for fc in P._monic_tuples(p, n):
        if P._is_irreducible_raw(fc, p):
            return FiniteField(p, n, Poly(fc, p))
    raise AssertionError("no irreducible of requested degree (unreachable)")


def evaluate_at(f: Poly, a: FieldElement) -> FieldElement:
    """Evaluate a mod-p polynomial at a field element (Horner)."""
    acc = a.field.zero()
    for c in reversed(P._reduce(f.coeffs, a.field.p)):
        acc = acc * a + a.field.element(c)
    return acc


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism determined by the image of the source generator."""

    src: FiniteField
    dst: FiniteField
    root: FieldElement  # image of src.generator(); a root of src.modulus in dst

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field != self.src:
            raise InvalidPolynomial("element not in the source field")
        return evaluate_at(a.poly(), self.root)

    def compose(self, outer: "Embedding") -> "Embedding":
        if outer.src != self.dst:
            raise InvalidPolynomial("embeddings not composable")
        return Embedding(self.src, outer.dst, outer(self.root))

    def __repr__(self) -> str:
        return f"Embedding({self.src} -> {self.dst}, x -> {self.root})"


@lru_cache(maxsize=None)
def embeddings(F: FiniteField, G: FiniteField) -> tuple:
    """All field homomorphisms F -> G (roots of F.modulus in G)."""
    if F.p != G.p or G.n % F.n:
        return ()
    roots = [a for a in G.elements() if evaluate_at(F.modulus, a).is_zero]
    roots.sort(key=lambda a: tuple(reversed(a.rep + (0,) * (G.n - len(a.rep)))))
    return tuple(Embedding(F, G, r) for r in roots)


def min_poly(a: FieldElement) -> Poly:
    """Monic minimal polynomial of a over Z/p, from the Frobenius orbit."""
    p = a.field.p
    conjugates = [a]
    b = a.frobenius()
    while b != a:
        conjugates.append(b)
        b = b.frobenius()
    # product of (x - c) over the orbit; coefficients land in the prime field
    coeffs = [a.field.one()]
    for c in conjugates:
        nxt = [a.field.zero()] * (len(coeffs) + 1)
        for i, k in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + k
            nxt[i] = nxt[i] - k * c
        coeffs = nxt
    out = []
    for k in coeffs:
        if len(k.rep) > 1:
            raise AssertionError("minimal polynomial coefficient outside prime field")
        out.append(k.rep[0] if k.rep else 0)
    return Poly(tuple(out), p)


def format_field(F: FiniteField) -> str:
    return f"GF({F.p}^{F.n}; {P.format_poly(F.modulus)})" if F.n > 1 else f"GF({F.p})"


def parse_field(text: str) -> FiniteField:
    """Parse ``GF(q)`` or ``GF(p^n)`` (canonical modulus implied)."""
    import re

    s = text.replace(" ", "")
    m = re.fullmatch(r"GF\((\d+)(?:\^(\d+))?(?:;[^)]*)?\)", s)
    if not m:
        raise InvalidPolynomial(f"cannot parse field literal {text!r}")
    base = int(m.group(1))
    if m.group(2):
        return make_field(base, int(m.group(2)))
    # GF(q): factor q as p^n
    for p in range(2, base + 1):
        if P.is_prime(p):
            n = 0
            q = base
            while q % p == 0:
                q //= p
                n += 1
            if q == 1 and n >= 1:
                return make_field(p, n)
            if n:
                break
    raise InvalidPolynomial(f"{base} is not a prime power")
