"""Dense univariate polynomials over Z and Z/p.

Coefficients are stored lowest degree first, with no trailing zeros; the
zero polynomial is the empty tuple.  ``modulus == 0`` means integer
coefficients, ``modulus == p`` means coefficients reduced into ``[0, p)``.

The raw-tuple helpers (``_mul``, ``_divmod``, ...) operate on bare
coefficient tuples mod p and are used by the hot loops elsewhere in the
package; the :class:`Poly` wrapper is the public currency.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidModulus, InvalidPolynomial, ZeroPolynomial

Coeffs = tuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidModulus(f"{p} is not prime")


# ---------------------------------------------------------------------------
# raw tuple arithmetic mod p

def _trim(c: list) -> Coeffs:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _add(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _sub(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _trim(out)


def _mul(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _scale(a: Coeffs, s: int, p: int) -> Coeffs:
    return _trim([(x * s) % p for x in a])


def _divmod(a: Coeffs, b: Coeffs, p: int) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i] % p
        if c:
            f = (c * inv_lb) % p
            q[i - db] = f
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - f * b[j]) % p
    return _trim(q), _trim(rem)


def _mod(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    return _divmod(a, b, p)[1]


def _monic(a: Coeffs, p: int) -> Coeffs:
    if not a:
        return ()
    if a[-1] == 1:
        return a
    return _scale(a, pow(a[-1], -1, p), p)


def _gcd(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _deriv(a: Coeffs, p: int) -> Coeffs:
    return _trim([(i * a[i]) % p for i in range(1, len(a))])


def _powmod(a: Coeffs, e: int, m: Coeffs, p: int) -> Coeffs:
    """a^e mod m over Z/p, by square and multiply."""
    result: Coeffs = (1,)
    a = _mod(a, m, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, a, p), m, p)
        a = _mod(_mul(a, a, p), m, p)
        e >>= 1
    return result


def _reduce(c, p: int) -> Coeffs:
    return _trim([x % p for x in c])


# ---------------------------------------------------------------------------
# Poly wrapper


@dataclass(frozen=True)
class Poly:
    """Polynomial with integer (modulus 0) or mod-p coefficients."""

    coeffs: Coeffs = ()
    modulus: int = 0

    def __post_init__(self):
        c = self.coeffs
        if self.modulus:
            c = _reduce(c, self.modulus)
        else:
            c = _trim(list(c))
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def reduce(self, p: int) -> "Poly":
        return Poly(self.coeffs, p)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc % self.modulus if self.modulus else acc

    def __add__(self, other: "Poly") -> "Poly":
        p = self._common(other)
        if p:
            return Poly(_add(self.coeffs, other.coeffs, p), p)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, x in enumerate(other.coeffs):
            a[i] += x
        return Poly(tuple(a), 0)

    def __neg__(self) -> "Poly":
        if self.modulus:
            return Poly(tuple(-c for c in self.coeffs), self.modulus)
        return Poly(tuple(-c for c in self.coeffs), 0)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        p = self._common(other)
        if p:
            return Poly(_mul(self.coeffs, other.coeffs, p), p)
        if self.is_zero or other.is_zero:
            return Poly((), 0)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Poly(tuple(out), 0)

    def __divmod__(self, other: "Poly") -> tuple:
        p = self._common(other)
        if not p:
            raise InvalidPolynomial("integer polynomial division not supported here")
        q, r = _divmod(self.coeffs, other.coeffs, p)
        return Poly(q, p), Poly(r, p)

    def _common(self, other: "Poly") -> int:
        if self.modulus != other.modulus:
            raise InvalidPolynomial(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")
        return self.modulus

    def sort_key(self) -> tuple:
        # (degree, c_{n-1}, ..., c_0): lexicographic on high-to-low coefficients
        return (self.degree, tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        mod = f" mod {self.modulus}" if self.modulus else ""
        return f"Poly({format_poly(self)}{mod})"


X = Poly((0, 1))


def poly_x(p: int = 0) -> Poly:
    return Poly((0, 1), p)


def constant(c: int, p: int = 0) -> Poly:
    return Poly((c,), p)


# ---------------------------------------------------------------------------
# text syntax: terms like  x^3+2x+1 , optional trailing  mod p

_TERM_RE = re.compile(r"([+-]?\d*)(x(?:\^(\d+))?)?")


def parse_poly(text: str, modulus: int = None) -> Poly:
    """Parse polynomial text like ``x^3+2x+1`` or ``x^2 - 2 mod 5``."""
    s = re.sub(r"\s+", "", text)
    m = re.search(r"mod(\d+)$", s)
    if m:
        if modulus is not None and modulus != int(m.group(1)):
            raise InvalidPolynomial("conflicting moduli in polynomial text")
        modulus = int(m.group(1))
        s = s[:m.start()]
    if not s:
        raise InvalidPolynomial("empty polynomial text")
    coeffs: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise InvalidPolynomial(f"cannot parse polynomial near {s[pos:]!r}")
        sign_num, xpart, exp = m.groups()
        if not sign_num and not xpart:
            raise InvalidPolynomial(f"cannot parse polynomial near {s[pos:]!r}")
        if sign_num in ("", "+", "-"):
            coef = -1 if sign_num == "-" else 1
        else:
            coef = int(sign_num)
        if xpart:
            e = int(exp) if exp else 1
        else:
            e = 0
            if sign_num in ("", "+", "-"):
                raise InvalidPolynomial(f"bare sign in polynomial text {text!r}")
        coeffs[e] = coeffs.get(e, 0) + coef
        pos = m.end()
    n = max(coeffs) + 1
    vec = [0] * n
    for e, c in coeffs.items():
        vec[e] = c
    return Poly(tuple(vec), modulus or 0)


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    terms = []
    for e in range(f.degree, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            xpow = "x" if e == 1 else f"x^{e}"
            body = xpow if abs(c) == 1 else f"{abs(c)}{xpow}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(terms)


# ---------------------------------------------------------------------------
# gcd / squarefree / irreducibility over Z/p


def poly_gcd(f: Poly, g: Poly, p: int) -> Poly:
    """Monic gcd of f and g over Z/p; gcd(0, 0) = 0."""
    _require_prime(p)
    return Poly(_gcd(_reduce(f.coeffs, p), _reduce(g.coeffs, p), p), p)


def squarefree_part(f: Poly, p: int) -> Poly:
    """Monic product of the distinct irreducible factors of f over Z/p."""
    _require_prime(p)
    fc = _monic(_reduce(f.coeffs, p), p)
    if not fc:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    return Poly(_squarefree(fc, p), p)


def _squarefree(fc: Coeffs, p: int) -> Coeffs:
    if len(fc) == 1:
        return (1,)
    d = _deriv(fc, p)
    if not d:
        # f = g(x^p); the squarefree part of f equals that of g, with
        # coefficients replaced by their p-th (Frobenius) roots -- which are
        # the coefficients themselves over Z/p.
        g = fc[::p]
        return _squarefree(_trim(list(g)), p)
    g = _gcd(fc, d, p)
    core = _divmod(fc, g, p)[0]
    if len(g) == 1:
        return _monic(core, p)
    # factors with exponent divisible by p survive in g with full multiplicity
    rest = _squarefree(g, p)
    extra = _divmod(rest, _gcd(rest, core, p), p)[0]
    return _monic(_mul(core, extra, p), p)


def is_irreducible(f: Poly, p: int) -> bool:
    """Irreducibility over Z/p by trial division against lower degrees."""
    _require_prime(p)
    fc = _reduce(f.coeffs, p)
    if not fc or fc[-1] != 1 or len(fc) < 2:
        raise InvalidPolynomial("irreducibility test needs a monic nonconstant input")
    return _is_irreducible_raw(fc, p)


def _is_irreducible_raw(fc: Coeffs, p: int) -> bool:
    """Rabin's criterion: monic f of degree n is irreducible over Z/p iff
    x^{p^n} = x mod f and gcd(x^{p^{n/l}} - x, f) = 1 for every prime l
    dividing n."""
    deg = len(fc) - 1
    if deg == 1:
        return True
    # iterated Frobenius: frob[k] = x^{p^k} mod f
    frob = [(0, 1)]
    for _ in range(deg):
        frob.append(_powmod(frob[-1], p, fc, p))
    if frob[deg] != _mod((0, 1), fc, p):
        return False
    n = deg
    l = 2
    while l * l <= n:
        if n % l == 0:
            g = _gcd(_sub(frob[deg // l], (0, 1), p), fc, p)
            if len(g) != 1:
                return False
            while n % l == 0:
                n //= l
        l += 1
    if n > 1:
        g = _gcd(_sub(frob[deg // n], (0, 1), p), fc, p)
        if len(g) != 1:
            return False
    return True


def _monic_tuples(p: int, d: int):
    """All monic coefficient tuples of degree d over Z/p, lex order on
    (c_{d-1}, ..., c_0)."""
    for tail in _tuples(p, d):
        yield tail + (1,)


def _tuples(p: int, d: int):
    """All length-d tuples (c_0, ..., c_{d-1}) over Z/p in lex order on
    the reversed tuple (c_{d-1}, ..., c_0)."""
    if d == 0:
        yield ()
        return
    for high in range(p):
        for rest in _tuples(p, d - 1):
            yield rest + (high,)


@lru_cache(maxsize=None)
def enumerate_irreducibles(p: int, dmax: int) -> tuple:
    """All monic irreducibles over Z/p of degree 1..dmax, ordered by
    (degree, lexicographic high-to-low coefficient tuple)."""
    _require_prime(p)
    if dmax < 1:
        raise InvalidPolynomial("dmax must be >= 1")
    found: list = []
    irr_by_deg: dict = {}
    for d in range(1, dmax + 1):
        if d == 1:
            irr_by_deg[1] = [fc for fc in _monic_tuples(p, 1)]
        else:
            # sieve: every reducible monic of degree d is q*h with q an
            # irreducible of degree <= d/2 already found
            composite = set()
            for e in range(1, d // 2 + 1):
                for q in irr_by_deg[e]:
                    for h in _monic_tuples(p, d - e):
                        composite.add(tuple(_mul(q, h, p)))
            irr_by_deg[d] = [fc for fc in _monic_tuples(p, d)
                             if fc not in composite]
        found.extend(Poly(fc, p) for fc in irr_by_deg[d])
    return tuple(found)


def factor_distinct(f: Poly, p: int) -> frozenset:
    """Set of distinct monic irreducible factors of f over Z/p, found by
    trial division against the irreducible enumeration."""
    _require_prime(p)
    fc = _monic(_reduce(f.coeffs, p), p)
    if not fc:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    return frozenset(Poly(g, p) for g in _factor_distinct_raw(fc, p))


def _factor_distinct_raw(fc: Coeffs, p: int) -> list:
    deg = len(fc) - 1
    if deg == 0:
        return []
    out = []
    rem = fc
    for q in enumerate_irreducibles(p, max(1, deg // 2)):
        qc = q.coeffs
        if len(qc) - 1 > (len(rem) - 1) // 2:
            break
        quo, r = _divmod(rem, qc, p)
        if not r:
            out.append(qc)
            rem = quo
            while True:
                quo, r = _divmod(rem, qc, p)
                if r:
                    break
                rem = quo
        if len(rem) == 1:
            break
    if len(rem) > 1:
        out.append(rem)  # remainder has no factor of degree <= deg/2: irreducible
    return out
