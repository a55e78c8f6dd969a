"""Shared helpers for the test suite: a corpus of small hand-built sites,
an independent Grothendieck-topology axiom checker, and a deterministic
grammar of ring presentations."""

import itertools

from regsite import poly as P
from regsite import sites as St
from regsite.presentations import Presentation


# ---------------------------------------------------------------------------
# small-category corpus (descriptions in the category JSON schema)


def _cat(objects, morphs, compose):
    """Category description with identities named 1<obj>."""
    ms = [{"id": f"1{d}", "src": d, "dst": d} for d in objects]
    ms += [{"id": i, "src": s, "dst": t} for i, s, t in morphs]
    return {"objects": list(objects), "morphisms": ms,
            "compose": [list(c) for c in compose],
            "identities": {d: f"1{d}" for d in objects}}


SITE_CORPUS = {
    "discrete3": _cat("ABC", [], []),
    "arrow": _cat("AB", [("a", "A", "B")], []),
    "chain2": _cat("ABC",
                   [("a", "A", "B"), ("b", "B", "C"), ("c", "A", "C")],
                   [("b", "a", "c")]),
    "span": _cat("PQR", [("f", "P", "Q"), ("g", "P", "R")], []),
    "cospan": _cat("PQR", [("f", "Q", "P"), ("g", "R", "P")], []),
    "parallel": _cat("AB", [("f", "A", "B"), ("g", "A", "B")], []),
    "idempotent": _cat("A", [("e", "A", "A")], [("e", "e", "e")]),
    "z2": _cat("A", [("g", "A", "A")], [("g", "g", "1A")]),
    "z3": _cat("A", [("g", "A", "A"), ("h", "A", "A")],
               [("g", "g", "h"), ("h", "g", "1A"), ("g", "h", "1A"),
                ("h", "h", "g")]),
    "leftzero": _cat("A", [("a", "A", "A"), ("b", "A", "A")],
                     [("a", "a", "a"), ("a", "b", "a"),
                      ("b", "a", "b"), ("b", "b", "b")]),
    "square": _cat("ABCD",
                   [("f", "A", "B"), ("g", "A", "C"), ("h", "B", "D"),
                    ("k", "C", "D"), ("d", "A", "D")],
                   [("h", "f", "d"), ("k", "g", "d")]),
    "retract": _cat("AB",
                    [("s", "A", "B"), ("r", "B", "A"), ("e", "B", "B")],
                    [("r", "s", "1A"), ("s", "r", "e"), ("e", "e", "e"),
                     ("e", "s", "s"), ("r", "e", "r")]),
}


def corpus_categories():
    return {name: St.validate_category(desc)
            for name, desc in SITE_CORPUS.items()}


# ---------------------------------------------------------------------------
# independent topology machinery (no reuse of the engine's validators)


def axioms_hold(C, covers):
    """Direct transcription of the three topology axioms for a candidate
    covers dict (object -> set of sieve masks)."""
    for d in C.objects:
        if C.into(d) not in covers[d]:
            return False
        for S in covers[d]:
            for i in range(len(C.morphisms)):
                if C.dst(i) != d:
                    continue
                if C.pullback(i, S) not in covers[C.src(i)]:
                    return False
        # transitivity against every sieve in the lattice
        for T in C.sieve_lattice(d):
            if T in covers[d]:
                continue
            for S in covers[d]:
                total = True
                for i in range(len(C.morphisms)):
                    if not (S >> i) & 1:
                        continue
                    if C.pullback(i, T) not in covers[C.src(i)]:
                        total = False
                        break
                if total:
                    return False     # T ought to be a cover but is not
    return True


def all_topologies(C):
    """Every Grothendieck topology on C, by brute-force subset search over
    the sieve lattices."""
    per_object = []
    for d in C.objects:
        lattice = [S for S in C.sieve_lattice(d) if S != C.into(d)]
        choices = []
        for r in range(len(lattice) + 1):
            for sub in itertools.combinations(lattice, r):
                choices.append(frozenset(sub) | {C.into(d)})
        per_object.append((d, choices))
    out = []
    for combo in itertools.product(*(c for _, c in per_object)):
        covers = {d: s for (d, _), s in zip(per_object, combo)}
        if axioms_hold(C, covers):
            out.append(St.Topology(C, covers))
    return out


# ---------------------------------------------------------------------------
# presentation grammar


def _ip(*coeffs):
    return P.Poly(tuple(coeffs), 0)


_REL_POOL = [
    (),
    (_ip(0, 1),),                       # x
    (_ip(1, 1),),                       # x+1
    (_ip(-1, 1),),                      # x-1
    (_ip(1, 0, 1),),                    # x^2+1
    (_ip(-2, 0, 1),),                   # x^2-2
    (_ip(1, 1, 1),),                    # x^2+x+1
    (_ip(1, 2),),                       # 2x+1
    (_ip(1, 1, 0, 1),),                 # x^3+x+1
    (_ip(2, 0, 3, 0, 1),),              # x^4+3x^2+2
    (_ip(6),),                          # constant 6
    (_ip(1, 0, 1), _ip(-1, 1)),         # x^2+1, x-1
    (_ip(1, 1), _ip(-1, 0, 1)),         # x+1, x^2-1
    (_ip(-2, 0, 1), _ip(-3, 0, 1)),     # x^2-2, x^2-3 (coprime over Q)
    (_ip(0, 2), _ip(0, 0, 3)),          # 2x, 3x^2
    (_ip(10), _ip(15)),                 # gcd ideal = (5)
]

_INV_POOL = [
    ((), ()),
    ((_ip(0, 1),), ()),                 # invert x
    ((_ip(1, 1),), ()),                 # invert x+1
    ((_ip(1, 0, 1),), ()),              # invert x^2+1
    ((), (2,)),
    ((), (5,)),
    ((_ip(0, 1),), (3,)),
    ((_ip(-1, 1), _ip(1, 1)), ()),
    ((), (2, 7)),
]


def grammar_presentations():
    """Deterministic family of >= 200 presentations, degree <= 4, at most
    two inversion constraints each."""
    out = []
    idx = 0
    for n in (0, 2, 6, 12, 30):
        for rels in _REL_POOL:
            # three inversion variants per (n, relations), cycling so every
            # pool entry appears with many bases
            for j in range(3):
                invp, invq = _INV_POOL[(idx * 3 + j) % len(_INV_POOL)]
                out.append(Presentation(n, rels, invp, frozenset(invq)))
            idx += 1
    return out
