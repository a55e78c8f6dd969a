"""Finite categories, sieves, and Grothendieck topologies.

Convention: a sieve on an object d is a set of morphisms with codomain d
closed under precomposition.  Categorical statements usually phrased with
cosieves are obtained by feeding the opposite category (``opposite``).

Sieves are represented internally as bitmasks over the morphism list;
the public ``Sieve`` value carries morphism ids.  Topologies store every
covering sieve explicitly (saturated form), so cover membership is a
set lookup.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import (AmbiguousMaximum, CategoryError, DanglingMorphism,
                     InternalError, InvalidGenerator, InvalidPresheaf,
                     MissingIdentity, NonAssociative, NotARefinement,
                     NotAtomicizable)


# ---------------------------------------------------------------------------
# categories


@dataclass(frozen=True)
class FinCategory:
    objects: tuple                 # object names
    morphisms: tuple               # (id, src, dst) triples
    composition: dict              # (g_id, f_id) -> id of g∘f
    identities: dict               # object -> morphism id

    # derived tables, filled in by validate_category
    _index: dict = field(default_factory=dict, compare=False, repr=False)
    _into: dict = field(default_factory=dict, compare=False, repr=False)
    _lattices: dict = field(default_factory=dict, compare=False, repr=False)

    def mor_id(self, i: int) -> str:
        return self.morphisms[i][0]

    def src(self, i: int) -> str:
        return self.morphisms[i][1]

    def dst(self, i: int) -> str:
        return self.morphisms[i][2]

    def index(self, mid: str) -> int:
        return self._index[mid]

    def compose(self, g: int, f: int) -> int:
        """Index of g∘f for composable indices (src g = dst f)."""
        return self._index[self.composition[(self.mor_id(g), self.mor_id(f))]]

    def into(self, d) -> int:
        """Bitmask of all morphisms with codomain d (the maximal sieve)."""
        return self._into[d]

    def morphisms_into(self, d):
        return [i for i in range(len(self.morphisms)) if self.dst(i) == d]

    def principal(self, f: int) -> int:
        """Sieve generated by a single morphism: all f∘g."""
        mask = 1 << f
        for g in range(len(self.morphisms)):
            if self.dst(g) == self.src(f):
                mask |= 1 << self.compose(f, g)
        return mask

    def sieve_lattice(self, d) -> tuple:
        """All sieves on d, as bitmasks (unions of principal sieves + 0)."""
        if d not in self._lattices:
            principals = {self.principal(f) for f in self.morphisms_into(d)}
            found = {0} | principals
            frontier = set(found)
            while frontier:
                nxt = set()
                for s in frontier:
                    for p in principals:
                        u = s | p
                        if u not in found:
                            found.add(u)
                            nxt.add(u)
                frontier = nxt
            self._lattices[d] = tuple(sorted(found))
        return self._lattices[d]

    def pullback(self, f: int, mask: int) -> int:
        """f*S = {g with codomain src(f) : f∘g ∈ S}, for a sieve S on dst(f)."""
        e = self.src(f)
        out = 0
        for g in range(len(self.morphisms)):
            if self.dst(g) == e and (mask >> self.compose(f, g)) & 1:
                out |= 1 << g
        return out

    def sieve(self, d, mask: int) -> "Sieve":
        return Sieve(d, frozenset(self.mor_id(i)
                                  for i in range(len(self.morphisms))
                                  if (mask >> i) & 1))

    def mask_of(self, sv: "Sieve") -> int:
        mask = 0
        for mid in sv.members:
            i = self._index[mid]
            if self.dst(i) != sv.object:
                raise InvalidGenerator(
                    f"morphism {mid} does not land in {sv.object}")
            mask |= 1 << i
        return mask


@dataclass(frozen=True)
class Sieve:
    object: object
    members: frozenset


def validate_category(desc: dict) -> FinCategory:
    """Build and exhaustively validate a finite category from a description
    {"objects", "morphisms" (id/src/dst), "compose" [[g,f,gf]], "identities"}.
    """
    objects = tuple(desc["objects"])
    objset = set(objects)
    if len(objset) != len(objects):
        raise CategoryError("duplicate object names")
    morphisms = tuple((m["id"], m["src"], m["dst"]) for m in desc["morphisms"])
    ids = [m[0] for m in morphisms]
    if len(set(ids)) != len(ids):
        raise CategoryError("duplicate morphism ids")
    index = {mid: i for i, (mid, _, _) in enumerate(morphisms)}
    for mid, s, t in morphisms:
        if s not in objset or t not in objset:
            raise DanglingMorphism(f"morphism {mid}: {s} -> {t} "
                                   "references unknown objects")
    identities = dict(desc["identities"])
    for d in objects:
        i = identities.get(d)
        if i is None or i not in index:
            raise MissingIdentity(f"no identity for object {d}")
        _, s, t = morphisms[index[i]]
        if s != d or t != d:
            raise MissingIdentity(f"identity of {d} is not an endomorphism")
    composition = {}
    for g, f, gf in desc.get("compose", ()):
        for mid in (g, f, gf):
            if mid not in index:
                raise DanglingMorphism(f"compose table references {mid}")
        composition[(g, f)] = gf
    # identities compose trivially even if the table omits them
    for mid, s, t in morphisms:
        composition.setdefault((mid, identities[s]), mid)
        composition.setdefault((identities[t], mid), mid)
    # totality and typing
    for gid, gs, gt in morphisms:
        for fid, fs, ft in morphisms:
            if ft != gs:
                if (gid, fid) in composition:
                    raise CategoryError(
                        f"compose table defines {gid}∘{fid} on a "
                        "non-composable pair")
                continue
            gf = composition.get((gid, fid))
            if gf is None:
                raise CategoryError(f"missing composite {gid}∘{fid}")
            _, cs, ct = morphisms[index[gf]]
            if cs != fs or ct != gt:
                raise CategoryError(f"composite {gid}∘{fid} = {gf} "
                                    "has the wrong endpoints")
    # unit laws
    for mid, s, t in morphisms:
        if composition[(mid, identities[s])] != mid or \
           composition[(identities[t], mid)] != mid:
            raise MissingIdentity(f"identity law fails at {mid}")
    # associativity
    for hid, hs, ht in morphisms:
        for gid, gs, gt in morphisms:
            if gt != hs:
                continue
            for fid, fs, ft in morphisms:
                if ft != gs:
                    continue
                if composition[(composition[(hid, gid)], fid)] != \
                   composition[(hid, composition[(gid, fid)])]:
                    raise NonAssociative(
                        f"({hid}∘{gid})∘{fid} != {hid}∘({gid}∘{fid})")
    cat = FinCategory(objects, morphisms, composition, identities)
    cat._index.update(index)
    for d in objects:
        cat._into[d] = sum(1 << i for i, m in enumerate(morphisms)
                           if m[2] == d)
    return cat


def category_from_json(path: str) -> FinCategory:
    with open(path) as fh:
        return validate_category(json.load(fh))


def category_to_dict(C: FinCategory) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": s, "dst": t} for m, s, t in C.morphisms],
        "compose": sorted([g, f, gf] for (g, f), gf in C.composition.items()),
        "identities": dict(C.identities),
    }


def opposite(C: FinCategory) -> FinCategory:
    """The opposite category; sieves there are cosieves of C."""
    desc = {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": t, "dst": s} for m, s, t in C.morphisms],
        "compose": [[f, g, gf] for (g, f), gf in C.composition.items()],
        "identities": dict(C.identities),
    }
    return validate_category(desc)


def sieve_generate(C: FinCategory, d, gens) -> Sieve:
    """Smallest sieve on d containing the given morphism ids."""
    mask = 0
    for mid in gens:
        if mid not in C._index:
            raise InvalidGenerator(f"unknown morphism {mid}")
        i = C.index(mid)
        if C.dst(i) != d:
            raise InvalidGenerator(f"{mid} does not land in {d}")
        mask |= C.principal(i)
    return C.sieve(d, mask)


# ---------------------------------------------------------------------------
# topologies


@dataclass(frozen=True)
class Topology:
    category: FinCategory
    covers: dict                   # object -> frozenset of sieve masks

    def cover_masks(self, d) -> frozenset:
        return self.covers[d]

    def is_cover(self, d, mask: int) -> bool:
        return mask in self.covers[d]

    def cover_sieves(self, d):
        return [self.category.sieve(d, m) for m in sorted(self.covers[d])]

    def total_covers(self) -> int:
        return sum(len(v) for v in self.covers.values())

    def refines(self, other: "Topology") -> bool:
        """self ⊆ other as sets of covers."""
        return all(self.covers[d] <= other.covers[d]
                   for d in self.category.objects)

    def __eq__(self, other):
        return (isinstance(other, Topology)
                and self.category is other.category
                and self.covers == other.covers)

    def __hash__(self):
        return hash(tuple(sorted((d, tuple(sorted(v)))
                                 for d, v in self.covers.items())))


def trivial_topology(C: FinCategory) -> Topology:
    return Topology(C, {d: frozenset({C.into(d)}) for d in C.objects})


def _saturate(C: FinCategory, covers: dict) -> dict:
    """Close a family of sieve masks under the topology axioms."""
    covers = {d: set(v) for d, v in covers.items()}
    for d in C.objects:
        covers.setdefault(d, set()).add(C.into(d))
    changed = True
    while changed:
        changed = False
        # stability: pull covers back along every morphism
        for d in C.objects:
            for mask in list(covers[d]):
                for f in C.morphisms_into(d):
                    pb = C.pullback(f, mask)
                    e = C.src(f)
                    if pb not in covers[e]:
                        covers[e].add(pb)
                        changed = True
        # transitivity (includes upward closure via the maximal sub-sieve)
        for d in C.objects:
            for T in C.sieve_lattice(d):
                if T in covers[d]:
                    continue
                for S in covers[d]:
                    if all(C.pullback(f, T) in covers[C.src(f)]
                           for f in range(len(C.morphisms))
                           if (S >> f) & 1):
                        covers[d].add(T)
                        changed = True
                        break
    return {d: frozenset(v) for d, v in covers.items()}


def saturate_topology(C: FinCategory, precoverage) -> Topology:
    """Least topology whose covers include the given sieves.

    ``precoverage``: map object -> iterable of Sieve (or morphism-id sets).
    """
    covers = {d: set() for d in C.objects}
    for d, sieves in precoverage.items():
        for sv in sieves:
            if not isinstance(sv, Sieve):
                sv = sieve_generate(C, d, sv)
            covers[d].add(C.mask_of(sv))
    return Topology(C, _saturate(C, covers))


def validate_topology(J: Topology) -> None:
    C = J.category
    sat = _saturate(C, {d: set(J.covers[d]) for d in C.objects})
    if sat != dict(J.covers):
        raise InternalError("cover family violates the topology axioms")
    for d in C.objects:
        for mask in J.covers[d]:
            if mask & ~C.into(d):
                raise InternalError(f"cover on {d} contains foreign morphisms")
        for mask in J.covers[d]:
            if mask not in C.sieve_lattice(d):
                raise InternalError(f"cover on {d} is not a sieve")


def topology_from_json(C: FinCategory, path: str) -> Topology:
    with open(path) as fh:
        data = json.load(fh)
    pre = {d: [sieve_generate(C, d, gens) for gens in lst]
           for d, lst in data.get("covers", {}).items()}
    return saturate_topology(C, pre)


def topology_to_dict(J: Topology) -> dict:
    return {"covers": {str(d): [sorted(J.category.sieve(d, m).members)
                                for m in sorted(J.covers[d])]
                       for d in J.category.objects}}


# ---------------------------------------------------------------------------
# closure / Heyting operations


def closure_mask(J: Topology, d, mask: int) -> int:
    """J-closure: all f into d whose pullback of the sieve is a J-cover."""
    C = J.category
    out = 0
    for f in C.morphisms_into(d):
        if J.is_cover(C.src(f), C.pullback(f, mask)):
            out |= 1 << f
    return out


def closure(J: Topology, S: Sieve) -> Sieve:
    C = J.category
    return C.sieve(S.object, closure_mask(J, S.object, C.mask_of(S)))


def closed_masks(J: Topology, d) -> tuple:
    return tuple(sorted({closure_mask(J, d, m)
                         for m in J.category.sieve_lattice(d)}))


def zero_mask(J: Topology, d) -> int:
    """Closure of the empty sieve (the zero subobject of the representable)."""
    return closure_mask(J, d, 0)


def heyting_neg_mask(J: Topology, d, mask: int) -> int:
    mask = closure_mask(J, d, mask)
    zero = zero_mask(J, d)
    best = 0
    for T in closed_masks(J, d):
        if (T & mask) | zero == zero:
            best |= T
    best = closure_mask(J, d, best)
    if (best & mask) | zero != zero:
        raise InternalError("negation candidates have no maximum")
    return best


def heyting_neg(J: Topology, S: Sieve) -> Sieve:
    C = J.category
    return C.sieve(S.object, heyting_neg_mask(J, S.object, C.mask_of(S)))


def is_demorgan(C: FinCategory, J: Topology):
    """(verdict, counterexample): ¬S ∨ ¬¬S must cover for every closed S."""
    for d in C.objects:
        for S in closed_masks(J, d):
            n = heyting_neg_mask(J, d, S)
            nn = heyting_neg_mask(J, d, n)
            if closure_mask(J, d, n | nn) != C.into(d):
                return False, (d, C.sieve(d, S))
    return True, None


def is_boolean(C: FinCategory, J: Topology) -> bool:
    """Every closed sieve complemented: S ∨ ¬S covers."""
    for d in C.objects:
        for S in closed_masks(J, d):
            n = heyting_neg_mask(J, d, S)
            if closure_mask(J, d, S | n) != C.into(d):
                return False
    return True


def dense_topology(C: FinCategory, J: Topology) -> Topology:
    """Covers = sieves with ¬S = 0; the double-negation (Boolean) topology."""
    covers = {}
    for d in C.objects:
        zero = zero_mask(J, d)
        covers[d] = frozenset(
            S for S in C.sieve_lattice(d)
            if heyting_neg_mask(J, d, S) == zero)
    out = Topology(C, covers)
    validate_topology(out)
    return out


def is_dense_over(C: FinCategory, J: Topology, J2: Topology) -> bool:
    """The J2-subtopos is dense in the J-topos: J2-covers are J-stably-nonzero."""
    if not J.refines(J2):
        raise NotARefinement("first topology is not contained in the second")
    for d in C.objects:
        zero = zero_mask(J, d)
        for S in J2.covers[d]:
            if heyting_neg_mask(J, d, S) != zero:
                return False
    return True


def demorganization(C: FinCategory, J: Topology) -> Topology:
    """Largest dense subtopos satisfying De Morgan's law, by exhaustive
    search over the saturated topologies between J and its dense topology.
    The largest subtopos corresponds to the smallest such topology."""
    dense = dense_topology(C, J)
    seen = {J}
    frontier = [J]
    while frontier:
        K = frontier.pop()
        for d in C.objects:
            for S in dense.covers[d] - K.covers[d]:
                ext = {e: set(K.covers[e]) for e in C.objects}
                ext[d].add(S)
                K2 = Topology(C, _saturate(C, ext))
                if K2 not in seen and K2.refines(dense):
                    seen.add(K2)
                    frontier.append(K2)
    good = [K for K in seen
            if is_dense_over(C, J, K) and is_demorgan(C, K)[0]]
    if not good:
        raise AmbiguousMaximum("no dense De Morgan topology found")
    best = min(good, key=lambda K: K.total_covers())
    for K in good:
        if not best.refines(K):
            raise AmbiguousMaximum(
                "dense De Morgan topologies have no least element")
    return best


# ---------------------------------------------------------------------------
# Ore condition / atomic topology


def ore_check(C: FinCategory):
    """(verdict, counterexample span): every span f: a→b, g: a→c admits
    h, k with h∘f = k∘g."""
    n = len(C.morphisms)
    for f in range(n):
        for g in range(n):
            if C.src(f) != C.src(g):
                continue
            found = False
            for h in range(n):
                if C.src(h) != C.dst(f):
                    continue
                hf = C.compose(h, f)
                for k in range(n):
                    if C.src(k) == C.dst(g) and C.dst(k) == C.dst(h) \
                            and C.compose(k, g) == hf:
                        found = True
                        break
                if found:
                    break
            if not found:
                return False, (C.mor_id(f), C.mor_id(g))
    return True, None


def atomic_topology(C: FinCategory) -> Topology:
    """Covers = all nonempty sieves; a topology exactly when every cospan
    f: a→d, h: e→d completes to a commutative square (the Ore condition in
    the orientation matching sieves-on-d = morphisms into d)."""
    ok, witness = ore_check(opposite(C))
    if not ok:
        raise NotAtomicizable(f"cospan {witness} cannot be completed; "
                              "a nonempty sieve has an empty pullback")
    covers = {d: frozenset(S for S in C.sieve_lattice(d) if S)
              for d in C.objects}
    out = Topology(C, covers)
    try:
        validate_topology(out)
    except InternalError as exc:
        raise NotAtomicizable(str(exc)) from exc
    return out


# ---------------------------------------------------------------------------
# presheaves and the sheaf condition


@dataclass(frozen=True)
class Presheaf:
    sets: dict      # object -> tuple of elements
    actions: dict   # morphism id -> dict element-of-P(dst) -> element-of-P(src)


def validate_presheaf(C: FinCategory, P: Presheaf) -> None:
    for d in C.objects:
        if d not in P.sets:
            raise InvalidPresheaf(f"no set for object {d}")
    for i in range(len(C.morphisms)):
        mid = C.mor_id(i)
        act = P.actions.get(mid)
        if act is None:
            raise InvalidPresheaf(f"no action for morphism {mid}")
        dom, cod = P.sets[C.dst(i)], set(P.sets[C.src(i)])
        if set(act) != set(dom) or not set(act.values()) <= cod:
            raise InvalidPresheaf(f"action of {mid} is not a function "
                                  f"P({C.dst(i)}) -> P({C.src(i)})")
    for d in C.objects:
        ident = P.actions[C.identities[d]]
        if any(ident[x] != x for x in P.sets[d]):
            raise InvalidPresheaf(f"identity action at {d} is not identity")
    for g in range(len(C.morphisms)):
        for f in range(len(C.morphisms)):
            if C.dst(f) != C.src(g):
                continue
            gf = C.mor_id(C.compose(g, f))
            for x in P.sets[C.dst(g)]:
                if P.actions[gf][x] != P.actions[C.mor_id(f)][P.actions[C.mor_id(g)][x]]:
                    raise InvalidPresheaf(
                        f"functoriality fails at {C.mor_id(g)}∘{C.mor_id(f)}")


def presheaf_from_dict(data: dict) -> Presheaf:
    return Presheaf({d: tuple(v) for d, v in data["sets"].items()},
                    {m: dict(v) for m, v in data["actions"].items()})


def _compatible_families(C: FinCategory, P: Presheaf, d, mask: int):
    """Yield all compatible families on the sieve: assignments f ↦ x_f with
    x_{f∘g} = P(g)(x_f)."""
    members = [f for f in range(len(C.morphisms)) if (mask >> f) & 1]
    fam: dict = {}

    def extend(i):
        if i == len(members):
            yield dict(fam)
            return
        f = members[i]
        for x in P.sets[C.src(f)]:
            ok = True
            for g in range(len(C.morphisms)):
                if C.dst(g) != C.src(f):
                    continue
                fg = C.compose(f, g)
                if fg in fam and fam[fg] != P.actions[C.mor_id(g)][x]:
                    ok = False
                    break
            if not ok:
                continue
            # the reverse direction: f = h∘k for assigned h decomposes f
            for j in range(i):
                h = members[j]
                for k in range(len(C.morphisms)):
                    if C.dst(k) == C.src(h) and C.compose(h, k) == f \
                            and P.actions[C.mor_id(k)][fam[h]] != x:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            fam[f] = x
            yield from extend(i + 1)
            del fam[f]

    yield from extend(0)


def is_sheaf(C: FinCategory, J: Topology, P: Presheaf) -> bool:
    """Every compatible family on every cover has a unique amalgamation."""
    validate_presheaf(C, P)
    for d in C.objects:
        for mask in J.covers[d]:
            for fam in _compatible_families(C, P, d, mask):
                hits = [x for x in P.sets[d]
                        if all(P.actions[C.mor_id(f)][x] == fam[f]
                               for f in fam)]
                if len(hits) != 1:
                    return False
    return True


def representable_presheaf(C: FinCategory, d) -> Presheaf:
    """y(d): object e ↦ Hom(e, d), morphism f ↦ precomposition with f."""
    sets = {e: tuple(C.mor_id(i) for i in range(len(C.morphisms))
                     if C.src(i) == e and C.dst(i) == d)
            for e in C.objects}
    actions = {}
    for f in range(len(C.morphisms)):
        act = {}
        for mid in sets[C.dst(f)]:
            act[mid] = C.mor_id(C.compose(C.index(mid), f))
        actions[C.mor_id(f)] = act
    return Presheaf(sets, actions)


# ---------------------------------------------------------------------------
# rigidity


def rigidity_check(C: FinCategory, J: Topology):
    """(verdict, irreducibles): irreducible objects admit only the maximal
    cover; rigidity holds when, for every d, the sieve generated by all
    morphisms from irreducibles is a cover contained in every cover of d."""
    irreducibles = [d for d in C.objects if J.covers[d] == {C.into(d)}]
    irr = set(irreducibles)
    for d in C.objects:
        mask = 0
        for f in C.morphisms_into(d):
            if C.src(f) in irr:
                mask |= C.principal(f)
        if not J.is_cover(d, mask):
            return False, irreducibles
        if any(mask & ~S for S in J.covers[d]):
            return False, irreducibles
    return True, irreducibles
