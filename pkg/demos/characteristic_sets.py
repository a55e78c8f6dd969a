"""Characteristic sets of one-generator presentations: the dichotomy and
the cover-union law.

A presentation fixes an integer modulus n, polynomial relations, and
inversion constraints. Its characteristic set — the characteristics of
fields admitting a compatible point — is always either a finite set of
primes (0 excluded) or a cofinite set of primes together with 0, and the
toolkit produces an integer certificate for whichever case holds.
"""

from regsite.poly import Poly
from regsite.presentations import (Presentation, char_set,
                                   cover_union_check, type_set)


def ip(*coeffs):
    return Poly(tuple(coeffs), 0)


def show(pres, bound=60):
    cs = char_set(pres, bound)
    print(f"  {pres.describe():45s} -> {cs.describe()}")
    return cs


print("The dichotomy: finite without 0, or cofinite with 0.\n")
show(Presentation(0, (), (), ()))                    # free: everything
show(Presentation(6, (), (), ()))                    # 6 = 0: {2, 3}
show(Presentation(0, (), (), frozenset({2})))        # 2 invertible
show(Presentation(0, (ip(1, 0, 1),), (), ()))        # x^2 = -1
show(Presentation(0, (ip(-2, 0, 1), ip(-3, 0, 1)), (), ()))  # x^2=2=3-ish

print("""
No finitely presented example has characteristic set exactly {0}: adding
relations can only cut the set down to a finite set of primes or leave a
cofinite set (the certificate integer witnesses which primes survive).
""")

print("Type sets list which irreducibles the generator can satisfy:")
pres = Presentation(0, (ip(1, 0, 1),), (), ())
ts = type_set(pres, 5, 3)
print(f"  x^2+1 = 0 at p=5: {sorted(str(h) for h in ts.polys_in)}")

print("""
The cover-union law: splitting along the principal cover at a decomposes
the characteristic set as Char(R) = Char(R/(a)) u Char(R/(aa*-1)).
""")
for a in (ip(0, 1), ip(-1, 1), ip(2,)):
    rep = cover_union_check(pres, a, 60)
    print(f"  a = {str(a):6s}: {rep.describe()}")
