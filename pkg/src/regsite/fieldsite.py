"""Finite truncations of the site of finite regular rings.

Objects are product-of-finite-fields rings within chosen bounds (plus the
zero ring); a site morphism A -> B is a ring homomorphism B -> A, so that
sieves on an object collect quotient maps out of the corresponding ring.
The coverage is generated by the principal covers
R -> R/(a), R -> R/(aa*-1) for every element a, together with the empty
sieve on the zero ring.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import sites as St
from .errors import TooLarge, UnknownObject
from .fields import Embedding, FiniteField, embeddings, make_field
from .poly import is_prime
from .rings import (RegularRing, RingHom, ZERO_RING, char_of_finite,
                    format_ring, hom_enumerate, identity_hom, principal_cover,
                    product_ring)


# ---------------------------------------------------------------------------
# truncated site construction


@dataclass(frozen=True)
class TruncatedSite:
    prime_bound: int
    degree_bound: int
    max_components: int
    rings: dict            # object name -> RegularRing
    category: St.FinCategory
    coverage: St.Topology
    homs: dict             # morphism id -> RingHom
    hom_ids: dict          # RingHom -> morphism id

    def object_of(self, R) -> str:
        name = R if isinstance(R, str) else format_ring(R)
        if name not in self.rings:
            raise UnknownObject(f"{name} is not an object of the truncation")
        return name


def _identity_embedding(F: FiniteField) -> Embedding:
    return Embedding(F, F, F.generator())


def _quotient_hom(R: RegularRing, idx: tuple) -> RingHom:
    """The projection R -> product of the selected components."""
    target = RegularRing(tuple(R.components[i] for i in idx))
    choices = tuple((i, _identity_embedding(R.components[i])) for i in idx)
    return RingHom(R, target, choices)


def build_truncated_site(P: int, D: int, max_components: int,
                         ceiling: int = 64) -> TruncatedSite:
    """All regular rings with component characteristic <= P, component
    degree <= D, and <= max_components components, as a site."""
    fields = [make_field(p, d)
              for p in range(2, P + 1) if is_prime(p)
              for d in range(1, D + 1)]
    objects = [ZERO_RING]
    for k in range(1, max_components + 1):
        for combo in itertools.combinations_with_replacement(fields, k):
            objects.append(product_ring(combo))
    objects = sorted(set(objects), key=lambda R: (len(R.components),
                                                  format_ring(R)))
    if len(objects) > ceiling:
        raise TooLarge(f"{len(objects)} objects exceeds the ceiling {ceiling}")
    rings = {format_ring(R): R for R in objects}
    names = {R: n for n, R in rings.items()}

    homs = {}      # morphism id -> RingHom
    hom_ids = {}   # RingHom -> morphism id
    morphisms = []
    identities = {}
    for B in objects:           # site morphisms A -> B are ring homs B -> A
        for A in objects:
            for k, h in enumerate(hom_enumerate(B, A)):
                mid = f"{names[A]}=>{names[B]}#{k}"
                homs[mid] = h
                hom_ids[h] = mid
                morphisms.append({"id": mid, "src": names[A], "dst": names[B]})
                if A is B and h == identity_hom(A):
                    identities[names[A]] = mid
    compose = []
    by_site_src = {}
    for m in morphisms:
        by_site_src.setdefault(m["src"], []).append(m)
    for f in morphisms:                      # f: A -> B, ring hom B -> A
        for g in by_site_src[f["dst"]]:      # g: B -> C, ring hom C -> B
            hf, hg = homs[f["id"]], homs[g["id"]]
            composite = hg.compose(hf)       # ring hom C -> A
            compose.append([g["id"], f["id"], hom_ids[composite]])
    cat = St.validate_category({"objects": list(rings), "morphisms": morphisms,
                                "compose": compose, "identities": identities})

    precover = {}
    for R in objects:
        name = names[R]
        seen_supports = set()
        gens = []
        for a in R.elements():
            sup = a.support()
            if sup in seen_supports:
                continue
            seen_supports.add(sup)
            alpha, beta, w = principal_cover(R, a)
            gens.append([hom_ids[_quotient_hom(R, w.alpha_idx)],
                         hom_ids[_quotient_hom(R, w.beta_idx)]])
        precover[name] = [St.sieve_generate(cat, name, g) for g in gens]
    zero_name = names[ZERO_RING]
    precover.setdefault(zero_name, []).append(
        St.Sieve(zero_name, frozenset()))
    coverage = St.saturate_topology(cat, precover)
    return TruncatedSite(P, D, max_components, rings, cat, coverage,
                         homs, hom_ids)


def site_to_dicts(site: TruncatedSite) -> tuple:
    """(category JSON dict, topology JSON dict) in the site-engine formats."""
    return (St.category_to_dict(site.category),
            St.topology_to_dict(site.coverage))


# ---------------------------------------------------------------------------
# structural checks on truncations


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    irreducibles: tuple
    field_objects: tuple
    irreducibles_are_fields: bool
    zero_not_irreducible: bool

    @property
    def passed(self) -> bool:
        return (self.rigid and self.irreducibles_are_fields
                and self.zero_not_irreducible)


def rigidity_check_field(site: TruncatedSite) -> RigidityReport:
    """Rigidity plus the structural expectations: the irreducible objects
    are exactly the fields, and the zero ring is covered by the empty sieve."""
    rigid, irr = St.rigidity_check(site.category, site.coverage)
    field_objects = tuple(sorted(n for n, R in site.rings.items()
                                 if R.is_field))
    zero_name = format_ring(ZERO_RING)
    return RigidityReport(
        rigid=rigid,
        irreducibles=tuple(sorted(irr)),
        field_objects=field_objects,
        irreducibles_are_fields=(sorted(irr) == list(field_objects)),
        zero_not_irreducible=(zero_name not in irr),
    )


def char_cover_check(site: TruncatedSite, R) -> bool:
    """The sieve of quotient maps R -> R/(p), p in Char R, is a cover."""
    name = site.object_of(R)
    ring = site.rings[name]
    gens = []
    for p in sorted(char_of_finite(ring)):
        idx = tuple(i for i, F in enumerate(ring.components) if F.p == p)
        gens.append(site.hom_ids[_quotient_hom(ring, idx)])
    sv = St.sieve_generate(site.category, name, gens)
    return site.coverage.is_cover(name, site.category.mask_of(sv))


# ---------------------------------------------------------------------------
# the single-characteristic field category C'_p


def _field_category(p: int, degrees) -> tuple:
    """Category of the fields F_{p^d} (d in degrees) and all embeddings.
    Returns (FinCategory, {morphism id: Embedding})."""
    flds = [make_field(p, d) for d in sorted(degrees)]
    names = {F: f"GF({F.order})" for F in flds}
    morphisms, table, identities = [], {}, {}
    for F in flds:
        for G in flds:
            for k, e in enumerate(embeddings(F, G)):
                mid = f"{names[F]}->{names[G]}#{k}"
                table[mid] = e
                morphisms.append({"id": mid, "src": names[F], "dst": names[G]})
                if F is G and e.root == F.generator():
                    identities[names[F]] = mid
    by_emb = {e: mid for mid, e in table.items()}
    compose = []
    for mid_f, ef in table.items():
        for mid_g, eg in table.items():
            if eg.src == ef.dst:
                compose.append([mid_g, mid_f, by_emb[ef.compose(eg)]])
    cat = St.validate_category({"objects": [names[F] for F in flds],
                                "morphisms": morphisms, "compose": compose,
                                "identities": identities})
    return cat, table


@dataclass(frozen=True)
class OreFieldsReport:
    p: int
    degree_bound: int
    passed: bool
    tested_pairs: int
    untestable_pairs: tuple   # (f_id, g_id) spans whose amalgam exceeds D
    counterexample: tuple


def ore_fields(p: int, D: int) -> OreFieldsReport:
    """Amalgamation of spans of embeddings among F_{p^d}, d <= D, testing
    only spans whose amalgam degree lcm fits under the bound."""
    cat, table = _field_category(p, range(1, D + 1))
    n = len(cat.morphisms)
    tested, untestable = 0, []
    counterexample = ()
    for f in range(n):
        for g in range(n):
            if cat.src(f) != cat.src(g):
                continue
            df = table[cat.mor_id(f)].dst.n
            dg = table[cat.mor_id(g)].dst.n
            if math.lcm(df, dg) > D:
                untestable.append((cat.mor_id(f), cat.mor_id(g)))
                continue
            tested += 1
            found = False
            for h in range(n):
                if cat.src(h) != cat.dst(f):
                    continue
                hf = cat.compose(h, f)
                for k in range(n):
                    if cat.src(k) == cat.dst(g) and cat.dst(k) == cat.dst(h) \
                            and cat.compose(k, g) == hf:
                        found = True
                        break
                if found:
                    break
            if not found and not counterexample:
                counterexample = (cat.mor_id(f), cat.mor_id(g))
    return OreFieldsReport(p, D, not counterexample, tested,
                           tuple(untestable), counterexample)


@dataclass(frozen=True)
class AtomicBooleanReport:
    p: int
    degree_bound: int
    degrees: tuple
    atomic_equals_dense: bool
    boolean: bool

    @property
    def passed(self) -> bool:
        return self.atomic_equals_dense and self.boolean


def atomic_booleanization_check(p: int, D: int) -> AtomicBooleanReport:
    """On the site of fields F_{p^d} for d | D (an amalgamation-closed
    truncation), the double-negation topology is the atomic one (all
    nonempty sieves) and it is Boolean."""
    degrees = tuple(d for d in range(1, D + 1) if D % d == 0)
    cat, _ = _field_category(p, degrees)
    site = St.opposite(cat)      # sieves on the site = cosieves of fields
    atomic = St.atomic_topology(site)
    dense = St.dense_topology(site, St.trivial_topology(site))
    return AtomicBooleanReport(p, D, degrees, atomic == dense,
                               St.is_boolean(site, atomic))


# ---------------------------------------------------------------------------
# Frobenius orbits on embedding sets


@dataclass(frozen=True)
class GSetReport:
    p: int
    m: int
    n: int
    hom_count: int
    orbit_sizes: tuple
    transitive: bool


def gset_homcount(p: int, m: int, n: int) -> GSetReport:
    """Embeddings F_{p^m} -> F_{p^n} with the Frobenius action x -> x^p of
    the codomain; a transitive orbit of size m when m | n, empty otherwise."""
    F, G = make_field(p, m), make_field(p, n)
    embs = set(embeddings(F, G))
    remaining = set(embs)
    orbits = []
    while remaining:
        e = remaining.pop()
        orbit = {e}
        cur = e
        while True:
            cur = Embedding(F, G, cur.root.frobenius())
            if cur in orbit:
                break
            assert cur in embs, "Frobenius left the embedding set"
            orbit.add(cur)
            remaining.discard(cur)
        orbits.append(len(orbit))
    return GSetReport(p, m, n, len(embs), tuple(sorted(orbits)),
                      len(orbits) == 1 if embs else False)
