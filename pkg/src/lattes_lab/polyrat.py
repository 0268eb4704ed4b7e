"""Univariate polynomials and rational maps over exact coefficient fields.

Two coefficient fields are supported: the rationals (fractions.Fraction)
and prime fields GF(p) (ints in [0, p)).  A polynomial is a coefficient
tuple, constant term first, with no trailing zeros; the zero polynomial is
the empty tuple.  A rational map is kept in canonical form: numerator and
denominator coprime with the denominator monic, so equal maps have equal
representations and projective evaluation is total.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .intmath import is_prime


class _Infinity:
    """The point at infinity of the projective line."""

    __slots__ = ()

    def __repr__(self):
        return "inf"


INFINITY = _Infinity()


class RationalField:
    """The field of rational numbers, with Fraction elements."""

    p = None

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} into QQ")

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """GF(p) with int elements in [0, p); use GF(p) to obtain instances."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, v):
        p = self.p
        if isinstance(v, int):
            return v % p
        if isinstance(v, Fraction):
            den = v.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {v} vanishes mod {p}")
            return v.numerator * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {v!r} into GF({p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(a, -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Poly:
    """Univariate polynomial over QQ or GF(p), constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable = (), *, _trusted=False):
        self.field = field
        if _trusted:
            self.coeffs = tuple(coeffs)
            return
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field) -> "Poly":
        return Poly(field, (), _trusted=True)

    @staticmethod
    def one(field) -> "Poly":
        return Poly(field, (field.one,), _trusted=True)

    @staticmethod
    def x(field) -> "Poly":
        return Poly(field, (field.zero, field.one), _trusted=True)

    @staticmethod
    def const(field, c) -> "Poly":
        return Poly(field, (c,))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"Poly({self.field}, {format_poly(self)!r})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        while out and out[-1] == F.zero:
            out.pop()
        return Poly(F, out, _trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs], _trusted=True)

    def __mul__(self, other) -> "Poly":
        F = self.field
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        if F is QQ:
            out = _qq_mul(a, b)
        else:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = (out[i + j] + ai * bj) % p
        while out and out[-1] == F.zero:
            out.pop()
        return Poly(F, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        F = self.field
        c = F.coerce(c)
        if c == F.zero:
            return Poly.zero(F)
        return Poly(F, [F.mul(c, a) for a in self.coeffs], _trusted=True)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(F), self
        rem = list(self.coeffs)
        div = other.coeffs
        dlead_inv = F.inv(div[-1])
        dd = len(div) - 1
        quot = [F.zero] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == F.zero:
                continue
            q = F.mul(c, dlead_inv)
            quot[i - dd] = q
            for j in range(dd + 1):
                rem[i - dd + j] = F.sub(rem[i - dd + j], F.mul(q, div[j]))
        while rem and rem[-1] == F.zero:
            rem.pop()
        return Poly(F, quot), Poly(F, rem, _trusted=True)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- maps --------------------------------------------------------------

    def __call__(self, x):
        """Evaluate by Horner's rule."""
        F = self.field
        x = F.coerce(x)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(F.coerce(i), c) for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        """self(other(x)) by Horner's rule on polynomials."""
        F = self.field
        acc = Poly.zero(F)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(F, c)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        F = self.field
        if self.leading == F.one:
            return self
        return self.scale(F.inv(self.leading))

    def reduce_mod(self, p: int) -> "Poly":
        """Coefficientwise reduction of a QQ polynomial into GF(p)."""
        if self.field is not QQ:
            raise TypeError("reduce_mod applies to polynomials over QQ")
        return Poly(GF(p), self.coeffs)


def _qq_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    # Integer fast path: division polynomials and Lattes numerators have
    # integral coefficients almost always, and plain int products are much
    # cheaper than Fraction products.
    if all(c.denominator == 1 for c in a) and all(c.denominator == 1 for c in b):
        ai = [c.numerator for c in a]
        bi = [c.numerator for c in b]
        out = [0] * (len(ai) + len(bi) - 1)
        for i, x in enumerate(ai):
            if x:
                for j, y in enumerate(bi):
                    out[i + j] += x * y
        return [Fraction(c) for c in out]
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return list(out)


def format_poly(f: Poly, var: str = "x") -> str:
    """Human-readable form, descending powers, e.g. 'x^4 - 16x'."""
    if f.is_zero:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == f.field.zero:
            continue
        if i == 0:
            term = str(c)
        else:
            xpow = var if i == 1 else f"{var}^{i}"
            if c == f.field.one:
                term = xpow
            elif f.field is QQ and c == -1:
                term = f"-{xpow}"
            elif "/" in str(c):
                term = f"({c}){xpow}"
            else:
                term = f"{c}{xpow}"
        parts.append(term)
    text = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            text += " - " + term[1:]
        else:
            text += " + " + term
    return text


# -- gcd machinery ----------------------------------------------------------


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd.  Over QQ a primitive remainder sequence on integer-cleared
    polynomials avoids the coefficient blow-up of naive Fraction Euclid."""
    if f.field is not g.field:
        raise TypeError("gcd of polynomials over different fields")
    F = f.field
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    if F is QQ:
        return _qq_gcd(f, g)
    p = F.p
    a, b = list(f.coeffs), list(g.coeffs)
    a, b = _fp_gcd(a, b, p)
    return Poly(F, a).monic()


def _fp_gcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    while b:
        a = _fp_mod(a, b, p)
        a, b = b, a
    return a, b


def _fp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q = c * inv % p
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - q * b[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_clear(f: Poly) -> list[int]:
    lcm = 1
    for c in f.coeffs:
        lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
    return [int(c * lcm) for c in f.coeffs]


def _int_content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = int_gcd(g, c)
        if g == 1:
            break
    return g


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder of a by b over Z
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        for j in range(db + 1):
            a[da - db + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def _qq_gcd(f: Poly, g: Poly) -> Poly:
    a, b = _int_clear(f), _int_clear(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        if r:
            r = [c // _int_content(r) for c in r]
        a, b = b, r
    return Poly(QQ, [Fraction(c) for c in a]).monic()


_PROBE_PRIMES = (2147483647, 2147483629, 2147483587, 2147483563, 2147483549)


def _coprime_certificate(f: Poly, g: Poly) -> Optional[bool]:
    """True if a single good reduction certifies gcd(f, g) = 1 over QQ.

    gcd degree can only grow under reduction (when the leading coefficients
    survive), so a coprime image certifies coprimality; an inconclusive
    probe returns None.
    """
    for p in _PROBE_PRIMES:
        ok = True
        fa, ga = [], []
        for c in f.coeffs:
            if c.denominator % p == 0:
                ok = False
                break
            fa.append(c.numerator * pow(c.denominator, -1, p) % p)
        if ok:
            for c in g.coeffs:
                if c.denominator % p == 0:
                    ok = False
                    break
                ga.append(c.numerator * pow(c.denominator, -1, p) % p)
        if not ok or not fa or not ga or fa[-1] == 0 or ga[-1] == 0:
            continue
        a, _ = _fp_gcd(fa, ga, p)
        if len(a) == 1:
            return True
        return None
    return None


# -- rational maps ----------------------------------------------------------


class RatMap:
    """A rational function num/den in canonical form: gcd(num, den) = 1 and
    den monic.  The canonical form makes equality tests and value tables
    reproducible and projective evaluation total."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, *, _canonical=False):
        if num.field is not den.field:
            raise TypeError("numerator and denominator over different fields")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (
            isinstance(other, RatMap)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatMap({format_ratmap(self)})"

    def __call__(self, x):
        return self.eval_proj(x)

    def eval_proj(self, x):
        """Evaluate at a point of P^1: a field element or INFINITY."""
        F = self.field
        if x is INFINITY:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INFINITY
            if dn < dd:
                return F.zero
            return F.mul(self.num.leading, F.inv(self.den.leading))
        nv = self.num(x)
        dv = self.den(x)
        if dv == F.zero:
            if nv == F.zero:
                raise ArithmeticError("0/0 during projective evaluation: map not canonical")
            return INFINITY
        return F.mul(nv, F.inv(dv))

    def compose(self, inner: "RatMap") -> "RatMap":
        """self(inner(x)) as a canonical rational map."""
        F = self.field
        n, d = inner.num, inner.den
        deg = max(self.num.degree, self.den.degree)
        powers_n = [Poly.one(F)]
        powers_d = [Poly.one(F)]
        for _ in range(deg):
            powers_n.append(powers_n[-1] * n)
            powers_d.append(powers_d[-1] * d)
        num_out = Poly.zero(F)
        for i, c in enumerate(self.num.coeffs):
            if c != F.zero:
                num_out = num_out + (powers_n[i] * powers_d[deg - i]).scale(c)
        den_out = Poly.zero(F)
        for i, c in enumerate(self.den.coeffs):
            if c != F.zero:
                den_out = den_out + (powers_n[i] * powers_d[deg - i]).scale(c)
        return RatMap(num_out, den_out)

    def integer_pair(self) -> tuple[list[int], list[int]]:
        """The unique integer-coefficient model of the map with joint
        content 1 and positive leading denominator coefficient."""
        if self.field is not QQ:
            raise TypeError("integer_pair applies to maps over QQ")
        lcm = 1
        for c in list(self.num.coeffs) + list(self.den.coeffs):
            lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
        ni = [int(c * lcm) for c in self.num.coeffs]
        di = [int(c * lcm) for c in self.den.coeffs]
        content = _int_content(ni + di)
        if content > 1:
            ni = [c // content for c in ni]
            di = [c // content for c in di]
        if di and di[-1] < 0:
            ni = [-c for c in ni]
            di = [-c for c in di]
        return ni, di

    def reduce_mod_p(self, p: int) -> "RatMap":
        """Reduce a map over QQ modulo p, then cancel any common factor so
        the image is canonical over GF(p).

        The reduction goes through the content-1 integer model of the map,
        so a monic-denominator scaling cannot spoil a map that is perfectly
        p-integral.  A denominator that vanishes identically mod p (e.g.
        x/5 at p = 5) is an error.
        """
        if self.field is not QQ:
            raise TypeError("reduce_mod_p applies to maps over QQ")
        ni, di = self.integer_pair()
        F = GF(p)
        num = Poly(F, ni)
        den = Poly(F, di)
        if den.is_zero:
            raise ZeroDivisionError(f"denominator vanishes identically mod {p}")
        return RatMap(num, den)

    def is_bijection(self):
        """Whether the map permutes P^1(F_p), with a certificate.

        Returns (True, value_table) where value_table lists the image of
        0, 1, ..., p-1, INFINITY in order, or (False, (x1, x2)) with the
        first colliding pair in that scan order.
        """
        F = self.field
        if F is QQ:
            raise TypeError("bijection testing is over a prime field")
        table = self.value_table()
        seen = {}
        for i, v in enumerate(table):
            key = F.p if v is INFINITY else v
            if key in seen:
                x1 = seen[key] if seen[key] < F.p else INFINITY
                x2 = i if i < F.p else INFINITY
                return False, (x1, x2)
            seen[key] = i
        return True, table

    def value_table(self) -> list:
        """Images of 0, 1, ..., p-1, INFINITY under the map."""
        F = self.field
        p = F.p
        num = np.array([int(c) for c in self.num.coeffs] or [0], dtype=np.int64)
        den = np.array([int(c) for c in self.den.coeffs] or [0], dtype=np.int64)
        xs = np.arange(p, dtype=np.int64)
        nv = _horner_many(num, xs, p)
        dv = _horner_many(den, xs, p)
        inv = _modinv_many(np.where(dv == 0, 1, dv), p)
        vals = (nv * inv) % p
        out = []
        for i in range(p):
            out.append(INFINITY if dv[i] == 0 else int(vals[i]))
        out.append(self.eval_proj(INFINITY))
        return out


def _canonicalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    F = num.field
    if num.is_zero:
        return Poly.zero(F), Poly.one(F)
    if F is QQ and _coprime_certificate(num, den):
        g = None
    else:
        g = poly_gcd(num, den)
    if g is not None and g.degree > 0:
        num = num // g
        den = den // g
    lead_inv = F.inv(den.leading)
    if den.leading != F.one:
        num = num.scale(lead_inv)
        den = den.scale(lead_inv)
    return num, den


def _horner_many(coeffs: np.ndarray, xs: np.ndarray, p: int) -> np.ndarray:
    acc = np.full_like(xs, int(coeffs[-1]) % p)
    for c in coeffs[-2::-1]:
        acc = (acc * xs + int(c) % p) % p
    return acc


def _modinv_many(vals: np.ndarray, p: int) -> np.ndarray:
    # elementwise vals**(p-2) mod p by square-and-multiply (p prime)
    result = np.ones_like(vals)
    base = vals % p
    e = p - 2
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def format_ratmap(f: RatMap, var: str = "x") -> str:
    """Integer-cleared display form '(num)/(den)' with descending powers.

    Over QQ the pair is scaled so all coefficients are integers with joint
    content 1 and a positive leading denominator coefficient; this is the
    scaling that prints e.g. '(x^4 - 16*x)/(4*x^3 + 8)'.
    """
    num, den = f.num, f.den
    if f.field is QQ:
        ni, di = f.integer_pair()
        num = Poly(QQ, ni)
        den = Poly(QQ, di)
    if den.degree == 0 and not den.is_zero and den.coeffs[0] == f.field.one:
        return format_poly(num, var)
    return f"({format_poly(num, var)})/({format_poly(den, var)})"


# -- rational roots ----------------------------------------------------------


def rational_roots(f: Poly) -> set[Fraction]:
    """All rational roots of a nonzero polynomial over QQ.

    Roots are found by Hensel-lifting the roots of a squarefree reduction
    modulo a well-chosen prime until candidates can be recovered exactly
    (denominators divide the leading coefficient, numerators are bounded by
    the Cauchy bound), then certified by exact evaluation.  This stays fast
    when the constant term is far too large to enumerate divisors.
    """
    if f.field is not QQ:
        raise TypeError("rational_roots applies to polynomials over QQ")
    if f.is_zero:
        raise ValueError("rational_roots of the zero polynomial")
    roots: set[Fraction] = set()
    cs = _int_clear(f)
    # strip powers of x
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        cs = cs[k:]
    if len(cs) == 1:
        return roots
    content = _int_content(cs)
    if content > 1:
        cs = [c // content for c in cs]
    lead = abs(cs[-1])
    # Cauchy bound on |root|
    bound = 1 + max(abs(c) for c in cs[:-1]) // abs(cs[-1]) + 1
    p = _squarefree_prime(cs)
    if p is None:
        # repeated factors over QQ: recurse on the squarefree part
        sq = Poly(QQ, [Fraction(c) for c in cs])
        sq = sq // poly_gcd(sq, sq.derivative())
        return roots | rational_roots(sq)
    mod_roots = _roots_mod_p(cs, p)
    if not mod_roots:
        return roots
    target = 2 * lead * bound
    pe, e = p, 1
    while pe <= target:
        pe *= p
        e += 1
    fprime = [i * c for i, c in enumerate(cs)][1:]
    for r in mod_roots:
        rl = _hensel_lift(cs, fprime, r, p, pe)
        for v in range(1, lead + 1):
            if lead % v:
                continue
            u = (v * rl) % pe
            if u > pe // 2:
                u -= pe
            if int_gcd(u, v) != 1:
                continue
            cand = Fraction(u, v)
            if _eval_int_poly(cs, cand) == 0:
                roots.add(cand)
    return roots


def _eval_int_poly(cs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _squarefree_prime(cs: Sequence[int], tries: int = 60) -> Optional[int]:
    p = 1009
    der = [i * c for i, c in enumerate(cs)][1:]
    for _ in range(tries):
        while not is_prime(p):
            p += 2
        if cs[-1] % p:
            a = [c % p for c in cs]
            b = [c % p for c in der]
            while b and b[-1] == 0:
                b.pop()
            if b:
                g, _ = _fp_gcd(a, b, p)
                if len(g) == 1:
                    return p
        p += 2
    return None


def _roots_mod_p(cs: Sequence[int], p: int) -> list[int]:
    out = []
    red = [c % p for c in cs]
    for x in range(p):
        acc = 0
        for c in reversed(red):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def _hensel_lift(cs: Sequence[int], der: Sequence[int], r: int, p: int, pe: int) -> int:
    modulus = p
    while modulus < pe:
        modulus = min(modulus * modulus, pe)
        fr = 0
        for c in reversed(cs):
            fr = (fr * r + c) % modulus
        dr = 0
        for c in reversed(der):
            dr = (dr * r + c) % modulus
        r = (r - fr * pow(dr, -1, modulus)) % modulus
    return r % pe
