"""A truncated field site: rigidity, characteristic covers, subcanonicity,
and Frobenius orbits.

Objects are finite regular rings (products of finite fields) with bounded
characteristic, component degree, and component count; a morphism A -> B
of the site is a ring homomorphism B -> A. Covers are generated by the
principal decompositions R -> R/(a) x R/(aa*-1).
"""

from regsite import sites as St
from regsite.fieldsite import (build_truncated_site, char_cover_check,
                               gset_homcount, ore_fields,
                               rigidity_check_field)

site = build_truncated_site(2, 2, 2)
C = site.category
print(f"truncation (P, D, k) = (2, 2, 2): {len(C.objects)} objects, "
      f"{len(C.morphisms)} morphisms")
print("objects:", ", ".join(sorted(site.rings)))

rep = rigidity_check_field(site)
print(f"\nrigid: {rep.rigid}; irreducible objects: {rep.irreducibles}")
print("irreducibles are exactly the fields:", rep.irreducibles_are_fields)

print("\ncharacteristic covers (R covered by its quotients R/(p)):")
for name, ring in sorted(site.rings.items()):
    print(f"  {name:15s} {'ok' if char_cover_check(site, ring) else 'FAIL'}")

print("\nsubcanonicity: every representable presheaf is a sheaf")
for d in C.objects:
    ok = St.is_sheaf(C, site.coverage, St.representable_presheaf(C, d))
    print(f"  y({d}): {'sheaf' if ok else 'NOT a sheaf'}")

print("\namalgamation of field embeddings in characteristic 2 (degrees <= 3):")
orep = ore_fields(2, 3)
print(f"  tested {orep.tested_pairs} spans, passed: {orep.passed}; "
      f"{len(orep.untestable_pairs)} spans exceed the truncation")

print("\nFrobenius orbits on embedding sets Hom(F_{p^m}, F_{p^n}):")
for (p, m, n) in ((2, 2, 4), (2, 3, 6), (3, 2, 6), (2, 2, 5)):
    g = gset_homcount(p, m, n)
    print(f"  p={p}, m={m}, n={n}: count={g.hom_count} "
          f"orbits={list(g.orbit_sizes)} transitive={g.transitive}")
