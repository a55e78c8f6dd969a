"""The cospan site: closure, Heyting negation, and DeMorganization.

The cospan category (two arrows f: Q -> P, g: R -> P) with the trivial
topology is the smallest site whose presheaves violate De Morgan's law.
Adding the cover {f, g} on P repairs it, and that repaired topology is
simultaneously the Booleanization.
"""

from regsite import sites as St

DESC = {
    "objects": ["P", "Q", "R"],
    "morphisms": [
        {"id": "1P", "src": "P", "dst": "P"},
        {"id": "1Q", "src": "Q", "dst": "Q"},
        {"id": "1R", "src": "R", "dst": "R"},
        {"id": "f", "src": "Q", "dst": "P"},
        {"id": "g", "src": "R", "dst": "P"},
    ],
    "compose": [],
    "identities": {"P": "1P", "Q": "1Q", "R": "1R"},
}

C = St.validate_category(DESC)
J = St.trivial_topology(C)

S = St.sieve_generate(C, "P", ["f"])
print(f"sieve generated by f on P: {sorted(S.members)}")
print(f"its Heyting negation:      {sorted(St.heyting_neg(J, S).members)}")

verdict, witness = St.is_demorgan(C, J)
d, W = witness
print(f"\nDe Morgan with the trivial topology? {verdict}")
print(f"witness: object {d}, sieve {sorted(W.members)} — neither it nor "
      "its negation is dense")

M = St.demorganization(C, J)
print("\nDeMorganization: smallest dense topology that is De Morgan")
for d in C.objects:
    sieves = [sorted(s.members) for s in M.cover_sieves(d)]
    print(f"  covers of {d}: {sieves}")

J1 = St.saturate_topology(C, {"P": [St.sieve_generate(C, "P", ["f", "g"])]})
print(f"\nequals the saturation of {{f, g}} covering P? {M == J1}")
print(f"and it is already Boolean: {St.is_boolean(C, M)}")

print(f"\nOre/amalgamation for the cospan category itself: "
      f"{St.ore_check(C)[0]} (spans complete, cospans need not)")
