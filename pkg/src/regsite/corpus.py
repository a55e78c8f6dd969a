"""Exhaustive corpus of small finite categories and the Ore / De Morgan
equivalence check.

Every category with at most ``max_objects`` objects and ``max_morphisms``
morphisms is visited at least once per isomorphism class.  For each
category C two independently computed verdicts are compared:

  * ore(C): every span f: a->b, g: a->c admits h, k with h∘f = k∘g;
  * dm(C): De Morgan's law in the presheaf topos [C, Set], i.e.
    is_demorgan on the site C^op with the trivial topology.

The enumeration fills composition tables by backtracking with full
associativity propagation (each assignment forces every consequence of
the associative law, with an undo trail), and optionally breaks the
relabeling symmetry within each hom-set by requiring fresh labels to
appear in increasing order — every isomorphism class retains at least
one representative.  Verdicts run as compiled kernels over bitmask
sieves; ``cross_validate`` replays a slice of the corpus through the
generic site engine to guard the compiled port, and
``monoid_class_counts`` anchors the enumerator against the known monoid
counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from numba import njit

from . import sites as St

_CACHE_BITS = 22

# ---------------------------------------------------------------------------
# compiled kernels: propagation


@njit(cache=True)
def _resolve(comp, trail, tlen, i1, j1, i2, j2):
    """Constrain comp[i1,j1] == comp[i2,j2]; force the undefined side.
    Returns the new trail length, or -(partial length)-1 on conflict."""
    a = comp[i1, j1]
    b = comp[i2, j2]
    if a >= 0 and b >= 0:
        return tlen if a == b else -tlen - 1
    if a >= 0:
        comp[i2, j2] = a
        trail[tlen, 0] = i2
        trail[tlen, 1] = j2
        return tlen + 1
    if b >= 0:
        comp[i1, j1] = b
        trail[tlen, 0] = i1
        trail[tlen, 1] = j1
        return tlen + 1
    return tlen


@njit(cache=True)
def _known(comp, trail, tlen, val, i, j):
    """Constrain comp[i,j] == val (a defined value)."""
    c = comp[i, j]
    if c >= 0:
        return tlen if c == val else -tlen - 1
    comp[i, j] = val
    trail[tlen, 0] = i
    trail[tlen, 1] = j
    return tlen + 1


@njit(cache=True)
def _propagate(comp, src, dst, m, x, y, v, trail, tlen):
    """Assign comp[x,y] = v and propagate every associativity consequence.
    Returns the new trail length, or -(partial length)-1 on conflict."""
    if comp[x, y] >= 0:
        return tlen if comp[x, y] == v else -tlen - 1
    comp[x, y] = v
    trail[tlen, 0] = x
    trail[tlen, 1] = y
    tlen += 1
    q = tlen - 1
    while q < tlen:
        a0 = trail[q, 0]
        b0 = trail[q, 1]
        v0 = comp[a0, b0]
        q += 1
        # (a0, b0, c): (a0∘b0)∘c = a0∘(b0∘c)
        for c in range(m):
            if dst[c] == src[b0]:
                e2 = comp[b0, c]
                if e2 >= 0:
                    tlen = _resolve(comp, trail, tlen, v0, c, a0, e2)
                    if tlen < 0:
                        return tlen
        # (a, a0, b0): (a∘a0)∘b0 = a∘(a0∘b0)
        for a in range(m):
            if src[a] == dst[a0]:
                e1 = comp[a, a0]
                if e1 >= 0:
                    tlen = _resolve(comp, trail, tlen, e1, b0, a, v0)
                    if tlen < 0:
                        return tlen
        # (a, b, b0) with a∘b = a0: the new cell is the left outer lookup
        for a in range(m):
            for b in range(m):
                if dst[b] == src[a] and comp[a, b] == a0 \
                        and dst[b0] == src[b]:
                    e2 = comp[b, b0]
                    if e2 >= 0:
                        tlen = _known(comp, trail, tlen, v0, a, e2)
                        if tlen < 0:
                            return tlen
        # (a0, b, c) with b∘c = b0: the new cell is the right outer lookup
        for b in range(m):
            if dst[b] == src[a0]:
                e1 = comp[a0, b]
                if e1 >= 0:
                    for c in range(m):
                        if dst[c] == src[b] and comp[b, c] == b0:
                            tlen = _known(comp, trail, tlen, v0, e1, c)
                            if tlen < 0:
                                return tlen
    return tlen


# ---------------------------------------------------------------------------
# compiled kernels: verdicts


@njit(cache=True)
def _principals(comp, src, dst, m, P):
    """P[f] = bitmask of all g∘f (the principal cosieve of f)."""
    for f in range(m):
        pm = 0
        df = dst[f]
        for g in range(m):
            if src[g] == df:
                pm |= 1 << comp[g, f]
        P[f] = pm


@njit(cache=True)
def _ore_verdict(P, src, m):
    for f in range(m):
        for g in range(f + 1, m):
            if src[f] == src[g] and (P[f] & P[g]) == 0:
                return False
    return True


@njit(cache=True)
def _dm_verdict(P, src, m, nobj, sieves, seen, closed, cseen, neg):
    """De Morgan for presheaves on C^op: on each object, every closed
    cosieve S has cl(¬S ∪ ¬¬S) maximal.  Closure for the trivial topology
    is cl(S) = {f : P[f] ⊆ S}."""
    for d in range(nobj):
        into = 0
        for f in range(m):
            if src[f] == d:
                into |= 1 << f
        for i in range(256):
            seen[i] = 0
            cseen[i] = 0
        ns = 1
        sieves[0] = 0
        seen[0] = 1
        qi = 0
        while qi < ns:
            s = sieves[qi]
            qi += 1
            for f in range(m):
                if (into >> f) & 1:
                    u = s | P[f]
                    if seen[u] == 0:
                        seen[u] = 1
                        sieves[ns] = u
                        ns += 1
        nc = 0
        for k in range(ns):
            S = sieves[k]
            c = 0
            for f in range(m):
                if (into >> f) & 1 and (P[f] & ~S) == 0:
                    c |= 1 << f
            if cseen[c] == 0:
                cseen[c] = 1
                closed[nc] = c
                nc += 1
        for k in range(nc):
            S = closed[k]
            acc = 0
            for l in range(nc):
                T = closed[l]
                if T & S == 0:
                    acc |= T
            c = 0
            for f in range(m):
                if (into >> f) & 1 and (P[f] & ~acc) == 0:
                    c |= 1 << f
            neg[S & 255] = c
        for k in range(nc):
            S = closed[k]
            n1 = neg[S & 255]
            n2 = neg[n1 & 255]
            u = n1 | n2
            c = 0
            for f in range(m):
                if (into >> f) & 1 and (P[f] & ~u) == 0:
                    c |= 1 << f
            if c != into:
                return False
    return True


# ---------------------------------------------------------------------------
# compiled kernels: the search itself


@njit(cache=True)
def _run_shape(m, nobj, src, dst, comp0, cells, cand_off, cand_val,
               cache_keys, cache_tags, cache_vals, shape_tag,
               emit_limit, out_buf, symbreak, sm_mask, init_exposed):
    """Backtracking search over all composition tables of one shape;
    compares the Ore and De Morgan verdicts at every complete table.
    Returns (tables visited, violations, tables emitted into out_buf)."""
    comp = comp0.copy()
    K = cells.shape[0]
    ptr = np.zeros(K + 1, np.int64)
    mark = np.zeros(K + 1, np.int64)
    mode = np.zeros(K + 1, np.int64)
    exps = np.zeros(K + 2, np.int64)
    trail = np.zeros((K + 1, 2), np.int64)
    P = np.zeros(m, np.int64)
    sieves = np.empty(256, np.int64)
    seen = np.empty(256, np.uint8)
    closed = np.empty(256, np.int64)
    cseen = np.empty(256, np.uint8)
    neg = np.empty(256, np.int64)
    nslots = cache_keys.shape[0]
    tlen = 0
    leaves = 0
    violations = 0
    emitted = 0
    exps[0] = init_exposed
    di = 0
    entering = True
    while di >= 0:
        if di == K:
            leaves += 1
            _principals(comp, src, dst, m, P)
            ore = _ore_verdict(P, src, m)
            key = np.uint64(0)
            for f in range(m):
                key = key << np.uint64(8) | np.uint64(P[f])
            # open-addressed exact-match cache over (key, shape_tag)
            slot = np.int64((key * np.uint64(0x9E3779B97F4A7C15))
                            >> np.uint64(64 - _CACHE_BITS))
            probes = 0
            dmv = False
            hit = False
            while probes < 64:
                if cache_keys[slot] == 0:
                    break
                if cache_keys[slot] == key and cache_tags[slot] == shape_tag:
                    dmv = cache_vals[slot] != 0
                    hit = True
                    break
                slot = (slot + 1) % nslots
                probes += 1
            if not hit:
                dmv = _dm_verdict(P, src, m, nobj,
                                  sieves, seen, closed, cseen, neg)
                if probes < 64 and cache_keys[slot] == 0:
                    cache_keys[slot] = key
                    cache_tags[slot] = shape_tag
                    cache_vals[slot] = 1 if dmv else 0
            bad = ore != dmv
            if bad:
                violations += 1
            if (emitted < emit_limit or bad) and emitted < out_buf.shape[0]:
                for i in range(m):
                    for j in range(m):
                        out_buf[emitted, i, j] = comp[i, j]
                emitted += 1
            di -= 1
            entering = False
            continue
        x = cells[di, 0]
        y = cells[di, 1]
        if entering:
            cur = exps[di] | (1 << x) | (1 << y)
            if comp[x, y] >= 0:          # forced by earlier propagation
                mode[di] = 0
                exps[di + 1] = cur | (1 << comp[x, y])
                di += 1
                continue
            mode[di] = 1
            mark[di] = tlen
            ptr[di] = 0
            exps[di] = cur
        else:
            if mode[di] == 0:
                di -= 1
                continue
            while tlen > mark[di]:       # undo the previous candidate
                tlen -= 1
                comp[trail[tlen, 0], trail[tlen, 1]] = -1
        found = False
        base = cand_off[di]
        hi = cand_off[di + 1]
        while base + ptr[di] < hi:
            v = cand_val[base + ptr[di]]
            ptr[di] += 1
            if symbreak and (exps[di] >> v) & 1 == 0 \
                    and (sm_mask[v] & ~exps[di]) != 0:
                continue                 # a smaller fresh label must go first
            nt = _propagate(comp, src, dst, m, x, y, v, trail, tlen)
            if nt >= 0:
                tlen = nt
                found = True
                break
            plen = -nt - 1               # conflict: roll back this attempt
            while plen > mark[di]:
                plen -= 1
                comp[trail[plen, 0], trail[plen, 1]] = -1
        if found:
            newexp = exps[di]
            for t in range(mark[di], tlen):
                newexp |= 1 << comp[trail[t, 0], trail[t, 1]]
            exps[di + 1] = newexp
            di += 1
            entering = True
        else:
            di -= 1
            entering = False
    return leaves, violations, emitted


@njit(cache=True)
def _canonical_key(comp, perms):
    """Lexicographically least relabeled composition table (identity kept
    fixed), packed into an integer; equal keys = isomorphic monoids."""
    m = comp.shape[0]
    best = np.int64(0)
    first = True
    for pi in range(perms.shape[0]):
        val = np.int64(0)
        for i in range(m):
            for j in range(m):
                val = val * m + perms[pi, comp[_inv(perms, pi, i, m),
                                               _inv(perms, pi, j, m)]]
        if first or val < best:
            best = val
            first = False
    return best


@njit(cache=True)
def _inv(perms, pi, i, m):
    for k in range(m):
        if perms[pi, k] == i:
            return k
    return -1


# ---------------------------------------------------------------------------
# shape enumeration


def _shapes(nobj: int, m: int):
    """Canonical assignments of (src, dst) for the non-identity morphisms,
    up to permutation of the objects."""
    extra = m - nobj
    pairs = [(s, d) for s in range(nobj) for d in range(nobj)]
    seen = set()
    for combo in itertools.combinations_with_replacement(pairs, extra):
        canon = min(
            tuple(sorted((perm[s], perm[d]) for s, d in combo))
            for perm in itertools.permutations(range(nobj)))
        if canon not in seen:
            seen.add(canon)
            yield canon


def _shape_tables(nobj: int, shape) -> tuple:
    """(m, src, dst, comp0, cells, cand_off, cand_val, sm_mask, exposed)
    for one shape.  Morphisms 0..nobj-1 are the identities; cells are
    ordered so that small-index subtables complete first."""
    m = nobj + len(shape)
    src = np.array([i for i in range(nobj)] + [s for s, _ in shape],
                   dtype=np.int8)
    dst = np.array([i for i in range(nobj)] + [d for _, d in shape],
                   dtype=np.int8)
    comp0 = np.full((m, m), -1, dtype=np.int8)
    for f in range(m):
        comp0[f, src[f]] = f      # f ∘ id
        comp0[dst[f], f] = f      # id ∘ f
    cells = []
    for g in range(nobj, m):
        for f in range(nobj, m):
            if dst[f] == src[g]:
                cells.append((g, f))
    cells.sort(key=lambda t: (max(t), t))
    cands = [[h for h in range(m)
              if src[h] == src[f] and dst[h] == dst[g]]
             for g, f in cells]
    cand_off = np.zeros(len(cells) + 1, dtype=np.int64)
    flat = []
    for i, cs in enumerate(cands):
        flat.extend(cs)
        cand_off[i + 1] = len(flat)
    # symmetry data: labels interchangeable within a hom-set
    sm_mask = np.zeros(m, dtype=np.int64)
    for v in range(nobj, m):
        for w in range(nobj, v):
            if src[w] == src[v] and dst[w] == dst[v]:
                sm_mask[v] |= 1 << w
    exposed = sum(1 << k for k in range(nobj))
    return (m, src, dst, comp0,
            np.array(cells, dtype=np.int64).reshape(len(cells), 2),
            cand_off, np.array(flat, dtype=np.int64), sm_mask, exposed)


# ---------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class CorpusReport:
    max_objects: int
    max_morphisms: int
    categories: int                 # composition tables visited
    violations: int
    counterexamples: tuple          # (nobj, src, dst, table) for failures
    per_size: dict                  # (objects, morphisms) -> table count


def _new_cache():
    """(keys, tags, vals) arrays for the open-addressed verdict cache."""
    n = 1 << _CACHE_BITS
    return (np.zeros(n, np.uint64), np.zeros(n, np.uint32),
            np.zeros(n, np.uint8))


def ore_demorgan_scan(max_objects: int = 3, max_morphisms: int = 8,
                      symmetry_break: bool = True,
                      progress=None) -> CorpusReport:
    """Check ore(C) ⇔ De Morgan([C, Set]) over every category with the
    given bounds; every isomorphism class is visited."""
    total = 0
    violations = 0
    examples = []
    per_size = {}
    keys, tags, vals = _new_cache()
    tag = 0
    for nobj in range(1, max_objects + 1):
        for m in range(nobj, max_morphisms + 1):
            count = 0
            for shape in _shapes(nobj, m):
                tag += 1
                (sm, src, dst, comp0, cells, cand_off, cand_val,
                 sm_mask, exposed) = _shape_tables(nobj, shape)
                out = np.zeros((4, sm, sm), dtype=np.int8)
                leaves, bad, emitted = _run_shape(
                    sm, nobj, src, dst, comp0, cells, cand_off, cand_val,
                    keys, tags, vals, tag, 0, out,
                    symmetry_break, sm_mask, exposed)
                count += leaves
                violations += bad
                if bad:
                    for t in range(min(bad, emitted)):
                        examples.append((nobj, tuple(src), tuple(dst),
                                         out[t].copy()))
            per_size[(nobj, m)] = count
            total += count
            if progress is not None:
                progress(nobj, m, count)
    return CorpusReport(max_objects, max_morphisms, total, violations,
                        tuple(examples), per_size)


def _emit_all(nobj, shape, cap, symmetry_break=True):
    (sm, src, dst, comp0, cells, cand_off, cand_val,
     sm_mask, exposed) = _shape_tables(nobj, shape)
    buf = np.zeros((cap, sm, sm), dtype=np.int8)
    keys, tags, vals = _new_cache()
    leaves, bad, emitted = _run_shape(
        sm, nobj, src, dst, comp0, cells, cand_off, cand_val,
        keys, tags, vals, 1, cap, buf, symmetry_break, sm_mask, exposed)
    return src, dst, buf, leaves, bad, emitted


def monoid_class_counts(max_order: int = 6) -> dict:
    """Isomorphism classes of monoids per order, by canonicalizing every
    visited table; anchors the enumerator against the known sequence
    1, 2, 7, 35, 228, 2237, ..."""
    out = {}
    for n in range(1, max_order + 1):
        shape = tuple((0, 0) for _ in range(n - 1))
        src, dst, buf, leaves, bad, emitted = _emit_all(1, shape, 4_000_000)
        assert bad == 0 and emitted == leaves
        perms = np.array([(0,) + p for p in
                          itertools.permutations(range(1, n))],
                         dtype=np.int64).reshape(-1, n)
        keys = {int(_canonical_key(buf[i], perms)) for i in range(emitted)}
        out[n] = len(keys)
    return out


def category_from_table(nobj: int, src, dst, table) -> St.FinCategory:
    """Rebuild a validated FinCategory from an enumerated table."""
    m = len(src)
    names = [f"m{i}" for i in range(m)]
    desc = {
        "objects": [f"o{k}" for k in range(nobj)],
        "morphisms": [{"id": names[i], "src": f"o{src[i]}",
                       "dst": f"o{dst[i]}"} for i in range(m)],
        "compose": [[names[g], names[f], names[int(table[g][f])]]
                    for g in range(m) for f in range(m)
                    if dst[f] == src[g]],
        "identities": {f"o{k}": names[k] for k in range(nobj)},
    }
    return St.validate_category(desc)


def cross_validate(max_objects: int = 3, max_morphisms: int = 5,
                   cap_per_shape: int = 2000) -> int:
    """Replay enumerated tables through the generic site engine and compare
    both verdicts with the compiled kernels.  Returns the number of tables
    compared; raises AssertionError on any disagreement."""
    compared = 0
    for nobj in range(1, max_objects + 1):
        for m in range(nobj, max_morphisms + 1):
            for shape in _shapes(nobj, m):
                src, dst, buf, leaves, bad, emitted = _emit_all(
                    nobj, shape, cap_per_shape)
                assert bad == 0
                sm = len(src)
                for t in range(emitted):
                    table = buf[t]
                    P = np.zeros(sm, dtype=np.int64)
                    _principals(table, src, dst, sm, P)
                    fast_ore = bool(_ore_verdict(P, src, sm))
                    ws = [np.empty(256, np.int64), np.empty(256, np.uint8),
                          np.empty(256, np.int64), np.empty(256, np.uint8),
                          np.empty(256, np.int64)]
                    fast_dm = bool(_dm_verdict(P, src, sm, nobj, *ws))
                    C = category_from_table(nobj, src, dst, table)
                    slow_ore = St.ore_check(C)[0]
                    site = St.opposite(C)
                    slow_dm = St.is_demorgan(site, St.trivial_topology(site))[0]
                    assert fast_ore == slow_ore, (nobj, table)
                    assert fast_dm == slow_dm, (nobj, table)
                    assert slow_ore == slow_dm, (nobj, table)
                    compared += 1
    return compared
