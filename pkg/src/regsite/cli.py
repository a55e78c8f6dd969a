"""Command-line front end.

Exit codes: 0 = success / verdict-true, 1 = verdict-false (data, not an
error), 2 = invalid input or usage.  ``--json`` switches every subcommand
to machine-readable output that round-trips through the owning module's
parser.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import fields as F
from . import fieldsite as FS
from . import poly as P
from . import presentations as PR
from . import rings as R
from . import sites as St
from .errors import NotAtomicizable, RegsiteError


# ---------------------------------------------------------------------------
# shared helpers


def _out(args, text, payload):
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def _parse_intpoly(text: str) -> P.Poly:
    return P.parse_poly(text, None)


def _load_cat(path: str) -> St.FinCategory:
    return St.category_from_json(path)


def _load_top(C: St.FinCategory, text: str) -> St.Topology:
    if text == "trivial":
        return St.trivial_topology(C)
    return St.topology_from_json(C, text)


def _load_ring(text: str):
    """(ring, decomposition-or-None) from a ring literal."""
    s = text.replace(" ", "")
    m = re.fullmatch(r"GF\((\d+)\)\[x\]/\((.+)\)", s)
    if m:
        dec = R.decompose_to_fields((int(m.group(1)),
                                     P.parse_poly(m.group(2), int(m.group(1)))))
        return dec.ring, dec
    return R.parse_ring(text), None


def _parse_element(ring, dec, text: str):
    """Element literal: a polynomial in the presented generator, or a
    comma-separated tuple of per-component values."""
    if dec is not None and "," not in text:
        g = P.parse_poly(text, ring.components[0].p if ring.components else 2)
        return R.RingElement(ring, tuple(dec.project(g, i)
                                         for i in range(len(ring.components))))
    parts = [t for t in text.split(",")] if text.strip() else []
    if len(parts) != len(ring.components):
        raise R.InvalidPolynomial(
            f"element needs {len(ring.components)} components, got {len(parts)}")
    comps = []
    for part, K in zip(parts, ring.components):
        comps.append(K.element(P.parse_poly(part, K.p)))
    return R.RingElement(ring, tuple(comps))


def _sieve_arg(C, d, text):
    gens = [g for g in text.split(",") if g.strip()]
    return St.sieve_generate(C, d, [g.strip() for g in gens])


def _top_payload(J: St.Topology) -> dict:
    return St.topology_to_dict(J)


def _top_text(J: St.Topology) -> str:
    lines = []
    for d in J.category.objects:
        sieves = ["{" + ",".join(sorted(map(str, s.members))) + "}"
                  for s in J.cover_sieves(d)]
        lines.append(f"{d}: " + " ".join(sieves))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# irr


def _cmd_irr_enumerate(args):
    polys = P.enumerate_irreducibles(args.p, args.dmax)
    _out(args, "\n".join(P.format_poly(f) for f in polys),
         {"p": args.p, "dmax": args.dmax,
          "irreducibles": [P.format_poly(f) for f in polys]})
    return 0


def _cmd_irr_test(args):
    f = P.parse_poly(args.poly, args.p)
    verdict = P.is_irreducible(f, args.p)
    _out(args, "irreducible" if verdict else "reducible",
         {"poly": P.format_poly(f), "p": args.p, "irreducible": verdict})
    return 0 if verdict else 1


# ---------------------------------------------------------------------------
# field


def _cmd_field_make(args):
    K = F.make_field(args.p, args.n)
    _out(args, F.format_field(K),
         {"p": K.p, "n": K.n, "modulus": P.format_poly(K.modulus),
          "literal": F.format_field(K)})
    return 0


def _cmd_field_embed(args):
    src = F.parse_field(args.src)
    dst = F.parse_field(args.dst)
    embs = F.embeddings(src, dst)
    text = "\n".join(f"x -> {e.root}" for e in embs) or "(none)"
    _out(args, f"count={len(embs)}\n{text}" if embs else "count=0",
         {"src": F.format_field(src), "dst": F.format_field(dst),
          "count": len(embs), "roots": [str(e.root) for e in embs]})
    return 0 if embs else 1


def _cmd_field_minpoly(args):
    K = F.parse_field(args.field)
    a = K.element(P.parse_poly(args.elem, K.p))
    mp = F.min_poly(a)
    _out(args, P.format_poly(mp),
         {"field": F.format_field(K), "elem": str(a),
          "minpoly": P.format_poly(mp)})
    return 0


# ---------------------------------------------------------------------------
# ring


def _cmd_ring_star(args):
    ring, dec = _load_ring(args.ring)
    x = _parse_element(ring, dec, args.elem)
    s = R.star(ring, x)
    assert s == R.star_by_iteration(ring, x)
    _out(args, str(s), {"ring": R.format_ring(ring), "elem": str(x),
                        "star": str(s), "components": [str(c) for c in s.comps]})
    return 0


def _cmd_ring_cover(args):
    ring, dec = _load_ring(args.ring)
    a = _parse_element(ring, dec, args.a)
    alpha, beta, _w = R.principal_cover(ring, a)
    _out(args, f"R/(a) = {R.format_ring(alpha)}\nR/(aa*-1) = {R.format_ring(beta)}",
         {"ring": R.format_ring(ring), "a": str(a),
          "vanishing": R.format_ring(alpha), "inverted": R.format_ring(beta)})
    return 0


def _cmd_ring_split(args):
    ring, dec = _load_ring(args.ring)
    y = _parse_element(ring, dec, args.elem)
    alpha, beta = R.split_idempotent(ring, y)
    _out(args, f"{R.format_ring(alpha)} x {R.format_ring(beta)}",
         {"ring": R.format_ring(ring), "elem": str(y),
          "factors": [R.format_ring(alpha), R.format_ring(beta)]})
    return 0


def _cmd_ring_decompose(args):
    f = P.parse_poly(args.poly, args.p)
    dec = R.decompose_to_fields((args.p, f))
    _out(args, R.format_ring(dec.ring),
         {"p": args.p, "poly": P.format_poly(f),
          "normal_form": R.format_ring(dec.ring),
          "factors": [P.format_poly(q) for q in dec.factors]})
    return 0


def _cmd_ring_type(args):
    ring, dec = _load_ring(args.ring)
    x = _parse_element(ring, dec, args.elem)
    tp = sorted(P.format_poly(q) for q in R.element_type(ring, x))
    _out(args, "{" + ", ".join(tp) + "}",
         {"ring": R.format_ring(ring), "elem": str(x), "type": tp})
    return 0


def _cmd_ring_homs(args):
    src, _ = _load_ring(args.src)
    dst, _ = _load_ring(args.dst)
    homs = R.hom_enumerate(src, dst)
    _out(args, f"count={len(homs)}",
         {"src": R.format_ring(src), "dst": R.format_ring(dst),
          "count": len(homs)})
    return 0 if homs else 1


# ---------------------------------------------------------------------------
# pres


def _cmd_pres_char(args):
    pres = PR.load_presentation(args.file)
    cs = PR.char_set(pres, args.bound)
    _out(args, cs.describe(),
         {"contains_zero": cs.contains_zero,
          "primes_in": sorted(cs.primes_in), "bound": cs.bound,
          "certificate": cs.certificate,
          "certificate_integer": cs.certificate_integer})
    return 0


def _cmd_pres_type(args):
    pres = PR.load_presentation(args.file)
    ts = PR.type_set(pres, args.p, args.degree)
    polys = sorted(P.format_poly(q) for q in ts.polys_in)
    tail = " u {irreducibles beyond bound}" if ts.contains_infinity else ""
    _out(args, "{" + ", ".join(polys) + "}" + tail,
         {"p": ts.p, "contains_infinity": ts.contains_infinity,
          "polys_in": polys, "degree_bound": ts.degree_bound})
    return 0


def _cmd_pres_cover_union(args):
    pres = PR.load_presentation(args.file)
    a = _parse_intpoly(args.a)
    rep = PR.cover_union_check(pres, a, args.bound)
    _out(args, rep.describe(),
         {"a": P.format_poly(a), "bound": args.bound, "passed": rep.passed,
          "base": sorted(rep.base.members_below()),
          "vanishing": sorted(rep.vanishing.members_below()),
          "inverted": sorted(rep.inverted.members_below())})
    return 0 if rep.passed else 1


def _cmd_pres_tsieve(args):
    pres = PR.load_presentation(args.file)
    A = {int(t) for t in args.set.split(",") if t.strip()}
    verdict = PR.t_sieve_member(pres, A, args.bound)
    _out(args, verdict, {"set": sorted(A), "bound": args.bound,
                         "verdict": verdict})
    return 0 if verdict == "yes" else 1


# ---------------------------------------------------------------------------
# site


def _cmd_site_validate(args):
    with open(args.cat) as fh:
        C = St.validate_category(json.load(fh))
    msg = f"category ok: {len(C.objects)} objects, {len(C.morphisms)} morphisms"
    payload = {"objects": len(C.objects), "morphisms": len(C.morphisms)}
    if args.top and args.top != "trivial":
        J = _load_top(C, args.top)
        St.validate_topology(J)
        msg += f"; topology ok: {J.total_covers()} covers"
        payload["covers"] = J.total_covers()
    _out(args, msg, payload)
    return 0


def _cmd_site_saturate(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    _out(args, _top_text(J), _top_payload(J))
    return 0


def _cmd_site_closure(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    S = _sieve_arg(C, args.object, args.sieve)
    cl = St.closure(J, S)
    members = sorted(map(str, cl.members))
    _out(args, "{" + ",".join(members) + "}",
         {"object": args.object, "closure": members})
    return 0


def _cmd_site_neg(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    S = _sieve_arg(C, args.object, args.sieve)
    ng = St.heyting_neg(J, S)
    members = sorted(map(str, ng.members))
    _out(args, "{" + ",".join(members) + "}",
         {"object": args.object, "neg": members})
    return 0


def _cmd_site_demorgan(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    verdict, witness = St.is_demorgan(C, J)
    if verdict:
        _out(args, "true", {"demorgan": True})
        return 0
    d, S = witness
    members = sorted(map(str, S.members))
    _out(args, f"false; witness object {d}, sieve {{{','.join(members)}}}",
         {"demorgan": False, "witness_object": str(d),
          "witness_sieve": members})
    return 1


def _cmd_site_dense(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    D = St.dense_topology(C, J)
    _out(args, _top_text(D), _top_payload(D))
    return 0


def _cmd_site_demorganize(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    M = St.demorganization(C, J)
    _out(args, _top_text(M), _top_payload(M))
    return 0


def _cmd_site_boolean(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    verdict = St.is_boolean(C, J)
    _out(args, str(verdict).lower(), {"boolean": verdict})
    return 0 if verdict else 1


def _cmd_site_ore(args):
    C = _load_cat(args.cat)
    verdict, witness = St.ore_check(C)
    if verdict:
        _out(args, "true", {"ore": True})
        return 0
    _out(args, f"false; span {witness[0]}, {witness[1]} has no amalgam",
         {"ore": False, "witness": [str(witness[0]), str(witness[1])]})
    return 1


def _cmd_site_atomic(args):
    C = _load_cat(args.cat)
    try:
        J = St.atomic_topology(C)
    except NotAtomicizable as exc:
        _out(args, f"false; {exc}", {"atomic": False, "reason": str(exc)})
        return 1
    _out(args, _top_text(J), _top_payload(J))
    return 0


def _cmd_site_sheaf(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    with open(args.presheaf) as fh:
        Ps = St.presheaf_from_dict(json.load(fh))
    St.validate_presheaf(C, Ps)
    verdict = St.is_sheaf(C, J, Ps)
    _out(args, str(verdict).lower(), {"sheaf": verdict})
    return 0 if verdict else 1


def _cmd_site_rigid(args):
    C = _load_cat(args.cat)
    J = _load_top(C, args.top)
    verdict, irr = St.rigidity_check(C, J)
    irr_s = sorted(map(str, irr))
    _out(args, f"{str(verdict).lower()}; irreducibles {{{','.join(irr_s)}}}",
         {"rigid": verdict, "irreducibles": irr_s})
    return 0 if verdict else 1


# ---------------------------------------------------------------------------
# fieldsite


def _cmd_fs_build(args):
    site = FS.build_truncated_site(args.P, args.D, args.k)
    cat, top = FS.site_to_dicts(site)
    payload = {"category": cat, "topology": top}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
        text = (f"wrote {args.out}: {len(cat['objects'])} objects, "
                f"{len(cat['morphisms'])} morphisms")
        _out(args, text, {"objects": len(cat["objects"]),
                          "morphisms": len(cat["morphisms"]),
                          "out": args.out})
    else:
        _out(args, json.dumps(payload, indent=1, sort_keys=True), payload)
    return 0


def _cmd_fs_rigid(args):
    site = FS.build_truncated_site(args.P, args.D, args.k)
    rep = FS.rigidity_check_field(site)
    _out(args,
         f"{'pass' if rep.passed else 'FAIL'}; irreducibles "
         f"{{{', '.join(rep.irreducibles)}}}",
         {"passed": rep.passed, "rigid": rep.rigid,
          "irreducibles": list(rep.irreducibles),
          "field_objects": list(rep.field_objects)})
    return 0 if rep.passed else 1


def _cmd_fs_charcover(args):
    site = FS.build_truncated_site(args.P, args.D, args.k)
    failures = [name for name, ring in sorted(site.rings.items())
                if not FS.char_cover_check(site, ring)]
    _out(args,
         "pass" if not failures else "FAIL: " + ", ".join(failures),
         {"passed": not failures, "failures": failures,
          "objects": len(site.rings)})
    return 0 if not failures else 1


def _cmd_fs_orefields(args):
    rep = FS.ore_fields(args.p, args.D)
    _out(args,
         f"{'pass' if rep.passed else 'FAIL'}; tested={rep.tested_pairs} "
         f"untestable={len(rep.untestable_pairs)}",
         {"passed": rep.passed, "tested_pairs": rep.tested_pairs,
          "untestable_pairs": [list(t) for t in rep.untestable_pairs]})
    return 0 if rep.passed else 1


def _cmd_fs_atomicbool(args):
    rep = FS.atomic_booleanization_check(args.p, args.D)
    _out(args,
         f"{'pass' if rep.passed else 'FAIL'}; degrees={list(rep.degrees)} "
         f"atomic=dense:{rep.atomic_equals_dense} boolean:{rep.boolean}",
         {"passed": rep.passed, "degrees": list(rep.degrees),
          "atomic_equals_dense": rep.atomic_equals_dense,
          "boolean": rep.boolean})
    return 0 if rep.passed else 1


def _cmd_fs_gset(args):
    rep = FS.gset_homcount(args.p, args.m, args.n)
    orbits = sorted(rep.orbit_sizes)
    text = (f"count={rep.hom_count} orbits={orbits}"
            + (" transitive" if rep.transitive else ""))
    _out(args, text, {"p": rep.p, "m": rep.m, "n": rep.n,
                      "count": rep.hom_count, "orbits": orbits,
                      "transitive": rep.transitive})
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="regsite")
    top.add_argument("--json", action="store_true",
                     help="machine-readable output")
    groups = top.add_subparsers(dest="group", required=True)

    def sub(parent, name, fn, **kw):
        sp = parent.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        # accepted here too so the flag may follow the subcommand; SUPPRESS
        # keeps a leading --json from being clobbered by the leaf default
        sp.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS,
                        help="machine-readable output")
        return sp

    irr = groups.add_parser("irr").add_subparsers(dest="cmd", required=True)
    s = sub(irr, "enumerate", _cmd_irr_enumerate)
    s.add_argument("p", type=int)
    s.add_argument("dmax", type=int)
    s = sub(irr, "test", _cmd_irr_test)
    s.add_argument("poly")
    s.add_argument("p", type=int)

    fld = groups.add_parser("field").add_subparsers(dest="cmd", required=True)
    s = sub(fld, "make", _cmd_field_make)
    s.add_argument("p", type=int)
    s.add_argument("n", type=int)
    s = sub(fld, "embed", _cmd_field_embed)
    s.add_argument("src")
    s.add_argument("dst")
    s = sub(fld, "minpoly", _cmd_field_minpoly)
    s.add_argument("field")
    s.add_argument("elem")

    rng = groups.add_parser("ring").add_subparsers(dest="cmd", required=True)
    s = sub(rng, "star", _cmd_ring_star)
    s.add_argument("--ring", required=True)
    s.add_argument("--elem", required=True)
    s = sub(rng, "cover", _cmd_ring_cover)
    s.add_argument("--ring", required=True)
    s.add_argument("--a", required=True)
    s = sub(rng, "split", _cmd_ring_split)
    s.add_argument("--ring", required=True)
    s.add_argument("--elem", required=True)
    s = sub(rng, "decompose", _cmd_ring_decompose)
    s.add_argument("p", type=int)
    s.add_argument("poly")
    s = sub(rng, "type", _cmd_ring_type)
    s.add_argument("--ring", required=True)
    s.add_argument("--elem", required=True)
    s = sub(rng, "homs", _cmd_ring_homs)
    s.add_argument("src")
    s.add_argument("dst")

    pre = groups.add_parser("pres").add_subparsers(dest="cmd", required=True)
    s = sub(pre, "char", _cmd_pres_char)
    s.add_argument("--file", required=True)
    s.add_argument("--bound", type=int, default=100)
    s = sub(pre, "type", _cmd_pres_type)
    s.add_argument("--file", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--degree", type=int, default=4)
    s = sub(pre, "cover-union", _cmd_pres_cover_union)
    s.add_argument("--file", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--bound", type=int, default=100)
    s = sub(pre, "tsieve", _cmd_pres_tsieve)
    s.add_argument("--file", required=True)
    s.add_argument("--set", required=True,
                   help="comma-separated primes, optionally 0")
    s.add_argument("--bound", type=int, default=100)

    site = groups.add_parser("site").add_subparsers(dest="cmd", required=True)
    for name, fn, extra in [
            ("validate", _cmd_site_validate, ()),
            ("saturate", _cmd_site_saturate, ()),
            ("closure", _cmd_site_closure, ("object", "sieve")),
            ("neg", _cmd_site_neg, ("object", "sieve")),
            ("demorgan", _cmd_site_demorgan, ()),
            ("dense", _cmd_site_dense, ()),
            ("demorganize", _cmd_site_demorganize, ()),
            ("boolean", _cmd_site_boolean, ()),
            ("ore", _cmd_site_ore, ()),
            ("atomic", _cmd_site_atomic, ()),
            ("sheaf", _cmd_site_sheaf, ("presheaf",)),
            ("rigid", _cmd_site_rigid, ()),
    ]:
        s = sub(site, name, fn)
        s.add_argument("--cat", required=True)
        if name not in ("ore", "atomic"):
            s.add_argument("--top", default="trivial",
                           help="'trivial' or a topology JSON file")
        if "object" in extra:
            s.add_argument("--object", required=True)
            s.add_argument("--sieve", required=True,
                           help="comma-separated generating morphism ids")
        if "presheaf" in extra:
            s.add_argument("--presheaf", required=True)

    fs = groups.add_parser("fieldsite").add_subparsers(dest="cmd",
                                                       required=True)
    s = sub(fs, "build", _cmd_fs_build)
    s.add_argument("P", type=int)
    s.add_argument("D", type=int)
    s.add_argument("k", type=int)
    s.add_argument("--out")
    for name, fn in [("rigid", _cmd_fs_rigid),
                     ("charcover", _cmd_fs_charcover)]:
        s = sub(fs, name, fn)
        s.add_argument("P", type=int)
        s.add_argument("D", type=int)
        s.add_argument("k", type=int)
    for name, fn in [("orefields", _cmd_fs_orefields),
                     ("atomicbool", _cmd_fs_atomicbool)]:
        s = sub(fs, name, fn)
        s.add_argument("p", type=int)
        s.add_argument("D", type=int)
    s = sub(fs, "gset", _cmd_fs_gset)
    s.add_argument("p", type=int)
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (RegsiteError, OSError, ValueError, KeyError,
            json.JSONDecodeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
