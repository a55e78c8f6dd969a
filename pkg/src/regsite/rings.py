"""Finite von Neumann regular rings in product-of-finite-fields normal form.

A finite regular ring is an ordered product of finite fields (the zero
ring is the empty product).  Rings presented as F_p[x]/(f) are decomposed
into this normal form by two independent routes: Chinese-remainder
factorization and iterated idempotent splitting on the quotient-ring
arithmetic; both must agree.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from . import poly as P
from .errors import (InvalidPolynomial, MixedCharacteristic, NotRegular,
                     NotSplittable)
from .fields import (Embedding, FieldElement, FiniteField, embeddings,
                     evaluate_at, make_field, min_poly, parse_field)
from .poly import Poly


def _field_key(F: FiniteField):
    return (F.p, F.n, F.modulus.sort_key())


@dataclass(frozen=True)
class RegularRing:
    components: tuple = ()
    origin: tuple = None  # optional (p, Poly f) recording a presented form

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def is_field(self) -> bool:
        return len(self.components) == 1

    @property
    def order(self) -> int:
        return math.prod(F.order for F in self.components)

    def zero(self) -> "RingElement":
        return RingElement(self, tuple(F.zero() for F in self.components))

    def one(self) -> "RingElement":
        return RingElement(self, tuple(F.one() for F in self.components))

    def from_int(self, k: int) -> "RingElement":
        return RingElement(self, tuple(F.element(k) for F in self.components))

    def element(self, comps) -> "RingElement":
        comps = tuple(comps)
        if len(comps) != len(self.components):
            raise InvalidPolynomial("component count mismatch")
        out = []
        for F, c in zip(self.components, comps):
            out.append(c if isinstance(c, FieldElement) else F.element(c))
        return RingElement(self, tuple(out))

    def elements(self):
        for comps in itertools.product(*(F.elements() for F in self.components)):
            yield RingElement(self, comps)

    def component_key(self) -> tuple:
        """Isomorphism invariant: the sorted multiset of components."""
        return tuple(sorted((_field_key(F) for F in self.components)))

    def __str__(self) -> str:
        return format_ring(self)

    def __repr__(self) -> str:
        return format_ring(self)


ZERO_RING = RegularRing(())


def product_ring(fields) -> RegularRing:
    """Normal form: components sorted by (p, degree, modulus)."""
    return RegularRing(tuple(sorted(fields, key=_field_key)))


@dataclass(frozen=True)
class RingElement:
    ring: RegularRing
    comps: tuple

    def _binop(self, other, fn):
        if self.ring != other.ring:
            raise InvalidPolynomial("elements of different rings")
        return RingElement(self.ring, tuple(fn(a, b) for a, b in zip(self.comps, other.comps)))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __neg__(self):
        return RingElement(self.ring, tuple(-a for a in self.comps))

    def __pow__(self, e: int):
        return RingElement(self.ring, tuple(a ** e for a in self.comps))

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.comps)

    @property
    def is_invertible(self) -> bool:
        return all(not a.is_zero for a in self.comps)

    def support(self) -> tuple:
        """Indices of components where the element is nonzero."""
        return tuple(i for i, a in enumerate(self.comps) if not a.is_zero)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.comps) + ")" if self.comps else "()"


# ---------------------------------------------------------------------------
# star operation


def star(R: RegularRing, x: RingElement) -> RingElement:
    """The unique quasi-inverse x* with x^2 x* = x and x (x*)^2 = x*.

    Componentwise this is inverse-or-zero, which agrees with the
    iterate-to-idempotent algorithm (x^{2N-1} for any N with x^{N+1} = x);
    see :func:`star_by_iteration` for the latter.
    """
    return RingElement(R, tuple(a if a.is_zero else a.inverse() for a in x.comps))


def star_by_iteration(R: RegularRing, x: RingElement) -> RingElement:
    """Quasi-inverse via the minimal N >= 1 with x^{N+1} = x."""
    acc = x * x
    n = 1
    while acc != x:
        acc = acc * x
        n += 1
    return x ** (2 * n - 1)


# ---------------------------------------------------------------------------
# covers and splittings


@dataclass(frozen=True)
class CoverWitness:
    """The bijection R -> R/(a) x R/(aa*-1) underlying a principal cover."""

    ring: RegularRing
    alpha: RegularRing
    beta: RegularRing
    alpha_idx: tuple
    beta_idx: tuple

    def split(self, x: RingElement) -> tuple:
        a = RingElement(self.alpha, tuple(x.comps[i] for i in self.alpha_idx))
        b = RingElement(self.beta, tuple(x.comps[i] for i in self.beta_idx))
        return a, b

    def combine(self, a: RingElement, b: RingElement) -> RingElement:
        comps = [None] * len(self.ring.components)
        for i, c in zip(self.alpha_idx, a.comps):
            comps[i] = c
        for i, c in zip(self.beta_idx, b.comps):
            comps[i] = c
        return RingElement(self.ring, tuple(comps))


def principal_cover(R: RegularRing, a: RingElement) -> tuple:
    """(R/(a), R/(aa*-1), witness): kill components where a is invertible,
    respectively where a vanishes."""
    alpha_idx = tuple(i for i, c in enumerate(a.comps) if c.is_zero)
    beta_idx = tuple(i for i, c in enumerate(a.comps) if not c.is_zero)
    alpha = RegularRing(tuple(R.components[i] for i in alpha_idx))
    beta = RegularRing(tuple(R.components[i] for i in beta_idx))
    return alpha, beta, CoverWitness(R, alpha, beta, alpha_idx, beta_idx)


def split_idempotent(R: RegularRing, y: RingElement) -> tuple:
    """(R/(yy*), R/(yy*-1)) for y neither invertible nor zero."""
    if y.is_zero or y.is_invertible:
        raise NotSplittable("element is zero or invertible; no proper idempotent")
    alpha, beta, _ = principal_cover(R, y)
    return alpha, beta


def char_of_finite(R: RegularRing) -> frozenset:
    """Set of component characteristics; empty for the zero ring."""
    return frozenset(F.p for F in R.components)


def element_type(R: RegularRing, x: RingElement) -> frozenset:
    """{ min_poly(x_i) } over the components; a finite subset of I_p."""
    if len(char_of_finite(R)) > 1:
        raise MixedCharacteristic(f"components of {R} have mixed characteristic")
    return frozenset(min_poly(c) for c in x.comps)


# ---------------------------------------------------------------------------
# presented rings F_p[x]/(f) and decomposition to fields


def _regularity_exponent(p: int, d: int) -> int:
    n = 1
    for k in range(1, d + 1):
        n = math.lcm(n, p ** k - 1)
    return n


def _is_squarefree_witness(fc, p: int) -> bool:
    """f squarefree over Z/p iff gcd(f, f') = 1.

    Equivalent to the quasi-inverse witness x^{N+1} = x in F_p[x]/(f) with
    N = lcm(p^d - 1, d <= deg f), but far cheaper; the equivalence is
    checked in the test suite (see test_squarefree_witness_equivalence)."""
    deriv = P._trim([(i * c) % p for i, c in enumerate(fc)][1:])
    return len(P._gcd(fc, deriv, p)) == 1 if deriv else len(fc) == 2


def _frobenius_matrix(fc, p: int):
    """Rows r_i = x^{p i} mod f as padded coefficient lists."""
    m = len(fc) - 1
    q = P._powmod((0, 1), p, fc, p)
    rows = []
    r = (1,)
    for _ in range(m):
        rows.append(list(r) + [0] * (m - len(r)))
        r = P._mod(P._mul(r, q, p), fc, p)
    return rows


def _fixed_space_basis(fc, p: int):
    """Basis of the Frobenius-fixed subalgebra of F_p[x]/(f).

    Its elements take prime-field values on every component, so any
    non-constant member yields a nontrivial idempotent y y* with
    y = v - c for a suitable c.
    """
    m = len(fc) - 1
    rows = _frobenius_matrix(fc, p)
    # solve (A - I) a = 0 where A has columns r_i
    mat = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(m)] for i in range(m)]
    pivots = []
    rank_row = 0
    for col in range(m):
        piv = None
        for r in range(rank_row, m):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank_row], mat[piv] = mat[piv], mat[rank_row]
        inv = pow(mat[rank_row][col], -1, p)
        mat[rank_row] = [(v * inv) % p for v in mat[rank_row]]
        for r in range(m):
            if r != rank_row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank_row])]
        pivots.append(col)
        rank_row += 1
    basis = []
    free = [c for c in range(m) if c not in pivots]
    for fc_col in free:
        vec = [0] * m
        vec[fc_col] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-mat[r][fc_col]) % p
        basis.append(P._trim(vec))
    return basis


def _split_moduli(fc, p: int) -> list:
    """Factor a squarefree monic f by iterated idempotent splitting.

    Each step takes a non-constant Frobenius-fixed v and splits off the
    support idempotent of y = v - c, realized on moduli as a gcd.
    """
    pending = [fc]
    done = []
    while pending:
        g = pending.pop()
        basis = _fixed_space_basis(g, p)
        v = next((b for b in basis if len(b) > 1), None)
        if v is None:
            done.append(g)
            continue
        pieces = []
        rem = g
        for c in range(p):
            if len(rem) == 1:
                break
            y = P._sub(v, (c,), p)
            d = P._gcd(y, rem, p)
            if len(d) > 1:
                pieces.append(d)
                rem = P._divmod(rem, d, p)[0]
        if len(rem) > 1:
            pieces.append(rem)
        pending.extend(pieces)
    return done


@lru_cache(maxsize=None)
def root_in_field(q: Poly, F: FiniteField) -> FieldElement:
    """Deterministic root of an irreducible q in F (exhaustive search)."""
    for a in F.elements():
        if evaluate_at(q, a).is_zero:
            return a
    raise InvalidPolynomial(f"{q} has no root in {F}")


@dataclass(frozen=True)
class Decomposition:
    """Normal form of a ring together with the quotient maps onto its
    component fields."""

    ring: RegularRing
    factors: tuple = None  # per component, the kernel factor (presented input)

    def generator(self) -> RingElement:
        """Image of x in the normal form (presented input only)."""
        if self.factors is None:
            raise InvalidPolynomial("decomposition of a non-presented ring")
        comps = tuple(root_in_field(q, F)
                      for q, F in zip(self.factors, self.ring.components))
        return RingElement(self.ring, comps)

    def project(self, g: Poly, i: int) -> FieldElement:
        """Project the class of g(x) onto component i."""
        if self.factors is None:
            raise InvalidPolynomial("decomposition of a non-presented ring")
        F = self.ring.components[i]
        return evaluate_at(g.reduce(F.p), root_in_field(self.factors[i], F))


def decompose_to_fields(arg) -> Decomposition:
    """Decompose a regular ring, or a presented (p, f), into fields.

    For presented input the decomposition is computed two independent
    ways (Chinese-remainder factorization and iterated idempotent
    splitting) which must agree up to permutation of components.
    """
    if isinstance(arg, RegularRing):
        return Decomposition(arg)
    p, f = arg
    P._require_prime(p)
    fc = P._monic(P._reduce(f.coeffs, p), p)
    if len(fc) < 2:
        raise InvalidPolynomial("presented modulus must be monic of degree >= 1")
    if not _is_squarefree_witness(fc, p):
        raise NotRegular(f"{f} is not squarefree mod {p}; the quotient has nilpotents")
    # route (a): trial-division factorization + CRT
    factors_a = sorted((q.coeffs for q in P.factor_distinct(Poly(fc, p), p)),
                       key=lambda c: (len(c), tuple(reversed(c))))
    # route (b): iterated idempotent splitting
    factors_b = sorted(_split_moduli(fc, p),
                       key=lambda c: (len(c), tuple(reversed(c))))
    if factors_a != factors_b:
        raise NotRegular(
            f"decomposition routes disagree for {f} mod {p}: {factors_a} vs {factors_b}")
    ordered = sorted(zip((make_field(p, len(q) - 1) for q in factors_a), factors_a),
                     key=lambda t: (_field_key(t[0]), t[1]))
    fields = tuple(t[0] for t in ordered)
    factors = tuple(Poly(t[1], p) for t in ordered)
    ring = RegularRing(fields, origin=(p, Poly(fc, p)))
    return Decomposition(ring, factors)


def presented_ring(p: int, f: Poly) -> tuple:
    """Normal form of F_p[x]/(f) together with the class of x."""
    dec = decompose_to_fields((p, f))
    return dec.ring, dec.generator()


# ---------------------------------------------------------------------------
# ring homomorphisms


@dataclass(frozen=True)
class RingHom:
    """Unital homomorphism between product rings, recorded componentwise:
    for each target component, a source component index and a field
    embedding (a hom into a field factors through one component)."""

    src: RegularRing
    dst: RegularRing
    choices: tuple  # per dst component: (src component index, Embedding)

    def __call__(self, x: RingElement) -> RingElement:
        if x.ring != self.src:
            raise InvalidPolynomial("element not in the source ring")
        return RingElement(self.dst,
                           tuple(emb(x.comps[i]) for i, emb in self.choices))

    def compose(self, outer: "RingHom") -> "RingHom":
        """outer . self (first self, then outer)."""
        if outer.src != self.dst:
            raise InvalidPolynomial("homomorphisms not composable")
        out = []
        for i, emb in outer.choices:
            j, inner = self.choices[i]
            out.append((j, inner.compose(emb)))
        return RingHom(self.src, outer.dst, tuple(out))

    def __repr__(self) -> str:
        return f"RingHom({self.src} -> {self.dst})"


def identity_hom(R: RegularRing) -> RingHom:
    choices = tuple((i, Embedding(F, F, F.generator()))
                    for i, F in enumerate(R.components))
    return RingHom(R, R, choices)


def hom_enumerate(R: RegularRing, S: RegularRing) -> list:
    """All unital ring homomorphisms R -> S."""
    per_target = []
    for G in S.components:
        opts = []
        for i, F in enumerate(R.components):
            for emb in embeddings(F, G):
                opts.append((i, emb))
        if not opts:
            return []
        per_target.append(opts)
    return [RingHom(R, S, choice) for choice in itertools.product(*per_target)]


# ---------------------------------------------------------------------------
# ring literals: GF(4) x GF(2)  or  GF(2)[x]/(x^2+x)


def format_ring(R: RegularRing) -> str:
    if R.is_zero:
        return "0"
    return " x ".join(f"GF({F.order})" for F in R.components)


def parse_ring(text: str) -> RegularRing:
    s = text.strip()
    if s == "0":
        return ZERO_RING
    m = re.fullmatch(r"GF\((\d+)\)\[x\]/\((.+)\)", s.replace(" ", ""))
    if m:
        p = int(m.group(1))
        f = P.parse_poly(m.group(2), p)
        return presented_ring(p, f)[0]
    return product_ring(parse_field(part) for part in s.split("x") if part.strip())
