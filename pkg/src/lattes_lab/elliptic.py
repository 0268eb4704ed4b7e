"""Weierstrass curves over Q: invariants, division polynomials, Lattes maps,
reduction and point counting over F_p, the group law, quadratic twists,
torsion with rational x-coordinate, and the curve catalog.

Curves are long Weierstrass models y^2 + a1*x*y + a3*y = x^3 + a2*x^2 +
a4*x + a6 with exact rational coefficients.  General models (a1, a3 != 0)
are handled natively through the b-invariants, so no coordinate change is
ever applied.  Division polynomials are kept as their x-parts: for odd n
the polynomial part is the full psi_n, for even n it is psi_n with one
factor psi_2 removed, and every psi_2^2 that appears is replaced by
q(x) = 4x^3 + b2*x^2 + 2*b4*x + b6.
"""

from __future__ import annotations

import functools
import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .intmath import is_prime, primes_upto, sqrt_mod, squarefree_part_known
from .polyrat import GF, INFINITY, Poly, QQ, RatMap, rational_roots

Point = Optional[tuple[int, int]]  # None is the identity O


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class Curve:
    """A nonsingular long Weierstrass model over Q."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.discriminant == 0:
            raise ValueError(f"singular curve {self.ainvs()}")
        # standard identity between the b-invariants
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4**2

    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @functools.cached_property
    def b2(self) -> Fraction:
        return self.a1**2 + 4 * self.a2

    @functools.cached_property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @functools.cached_property
    def b6(self) -> Fraction:
        return self.a3**2 + 4 * self.a6

    @functools.cached_property
    def b8(self) -> Fraction:
        return (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )

    @functools.cached_property
    def c4(self) -> Fraction:
        return self.b2**2 - 24 * self.b4

    @functools.cached_property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @functools.cached_property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    @functools.cached_property
    def j(self) -> Fraction:
        return self.c4**3 / self.discriminant

    @functools.cached_property
    def psi2_squared(self) -> Poly:
        """q(x) = 4x^3 + b2*x^2 + 2*b4*x + b6, the square of psi_2."""
        return Poly(QQ, (self.b6, 2 * self.b4, self.b2, Fraction(4)))

    @functools.cached_property
    def division_polys(self) -> "DivisionPolynomials":
        return DivisionPolynomials(self)

    def __repr__(self):
        return f"Curve{tuple(str(a) for a in self.ainvs())}"

    # -- reduction ----------------------------------------------------------

    def has_good_reduction(self, p: int) -> bool:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if any(a.denominator % p == 0 for a in self.ainvs()):
            return False
        d = self.discriminant
        return d.numerator % p != 0

    def good_primes(self, pmax: int, pmin: int = 5) -> list[int]:
        return [p for p in primes_upto(pmax) if p >= pmin and self.has_good_reduction(p)]

    def bad_primes_in(self, pmax: int, pmin: int = 5) -> list[int]:
        return [
            p for p in primes_upto(pmax) if p >= pmin and not self.has_good_reduction(p)
        ]

    def _require_good(self, p: int):
        if p < 5:
            raise ValueError("reduction is supported for primes p >= 5 only")
        if not self.has_good_reduction(p):
            raise ValueError(f"bad reduction at {p} for {self}")

    def coeffs_mod(self, p: int) -> tuple[int, ...]:
        F = GF(p)
        return tuple(F.coerce(a) for a in self.ainvs())


def parse_curve(text: str) -> Curve:
    """Parse the bracketed coefficient format '[a1,a2,a3,a4,a6]'."""
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"curve spec must look like [a1,a2,a3,a4,a6], got {text!r}")
    parts = t[1:-1].split(",")
    if len(parts) != 5:
        raise ValueError(f"curve spec needs 5 coefficients, got {len(parts)}")
    return Curve(*(Fraction(s.strip()) for s in parts))


def format_curve(curve: Curve) -> str:
    return "[" + ",".join(str(a) for a in curve.ainvs()) + "]"


def curve_hash(curve: Curve) -> str:
    """Stable short hash of the coefficient vector, used as a cache key."""
    return hashlib.sha256(format_curve(curve).encode()).hexdigest()[:12]


# -- division polynomials ----------------------------------------------------


class DivisionPolynomials:
    """Cache of the x-parts of the division polynomials of one curve.

    self[n] is psi_n for odd n and psi_n / psi_2 for even n, both as
    polynomials in x alone.  The leading coefficient is n for odd n and
    n/2 for even n; the degree is (n^2-1)/2 resp. (n^2-4)/2.
    """

    def __init__(self, curve: Curve):
        b2, b4, b6, b8 = curve.b2, curve.b4, curve.b6, curve.b8
        self.curve = curve
        self.q = curve.psi2_squared
        self._cache: dict[int, Poly] = {
            0: Poly.zero(QQ),
            1: Poly.one(QQ),
            2: Poly.one(QQ),
            3: Poly(QQ, (b8, 3 * b6, 3 * b4, b2, Fraction(3))),
            4: Poly(
                QQ,
                (
                    b4 * b8 - b6**2,
                    b2 * b8 - b4 * b6,
                    10 * b8,
                    10 * b6,
                    5 * b4,
                    b2,
                    Fraction(2),
                ),
            ),
        }

    def __getitem__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("division polynomial index must be >= 0")
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        m = n // 2
        if n % 2:
            # psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3, with a
            # q^2 on whichever side carries the even indices
            a = self[m + 2] * self[m] ** 3
            b = self[m - 1] * self[m + 1] ** 3
            q2 = self.q * self.q
            out = q2 * a - b if m % 2 == 0 else a - q2 * b
        else:
            out = self[m] * (self[m + 2] * self[m - 1] ** 2 - self[m - 2] * self[m + 1] ** 2)
        self._cache[n] = out
        return out


def division_poly(curve: Curve, n: int) -> Poly:
    """The x-part of the n-th division polynomial (memoized per curve)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return curve.division_polys[n]


@functools.lru_cache(maxsize=None)
def lattes_map(curve: Curve, k: int) -> RatMap:
    """The k-th Lattes map: the rational function with
    L_k(x(P)) = x([k]P), written purely in x.

    L_k = x - psi_{k-1} psi_{k+1} / psi_k^2, with every psi_2^2 replaced by
    q(x); the numerator is monic of degree k^2 and the denominator has
    degree k^2 - 1 and leading coefficient k^2 before normalization.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    x = Poly.x(QQ)
    if k == 1:
        return RatMap(x, Poly.one(QQ))
    ps = curve.division_polys
    q = curve.psi2_squared
    pk, lo, hi = ps[k], ps[k - 1], ps[k + 1]
    if k % 2:
        num = x * pk * pk - q * lo * hi
        den = pk * pk
    else:
        num = x * q * pk * pk - lo * hi
        den = q * pk * pk
    return RatMap(num, den)


# -- point counting and the group law over F_p -------------------------------


def count_points(curve: Curve, p: int) -> tuple[int, int]:
    """(|E(F_p)|, a_p) by the quadratic-character sum over the completed
    square: |E(F_p)| = p + 1 + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6).

    Vectorized; all intermediates stay below 2**63 for p < 2**31.
    """
    curve._require_good(p)
    F = GF(p)
    b2, b4, b6 = F.coerce(curve.b2), F.coerce(2 * curve.b4), F.coerce(curve.b6)
    xs = np.arange(p, dtype=np.int64)
    v = (4 * xs + b2) % p
    v = (v * xs + b4) % p
    v = (v * xs + b6) % p
    sq = np.zeros(p, dtype=bool)
    sq[(xs * xs) % p] = True
    s = int(np.count_nonzero(sq[v] & (v != 0))) - int(np.count_nonzero(~sq[v] & (v != 0)))
    order = p + 1 + s
    ap = -s
    if ap * ap > 4 * p:
        raise RuntimeError(f"Hasse bound violated at p={p}: a_p={ap}")
    return order, ap


def is_on_curve(curve: Curve, pt: Point, p: int) -> bool:
    if pt is None:
        return True
    a1, a2, a3, a4, a6 = curve.coeffs_mod(p)
    x, y = pt[0] % p, pt[1] % p
    lhs = (y * y + a1 * x * y + a3 * y) % p
    rhs = (((x + a2) * x + a4) * x + a6) % p
    return lhs == rhs


def negate_point(curve: Curve, pt: Point, p: int) -> Point:
    if pt is None:
        return None
    a1, _, a3, _, _ = curve.coeffs_mod(p)
    x, y = pt
    return (x % p, (-y - a1 * x - a3) % p)


def add_points(curve: Curve, P: Point, Q: Point, p: int) -> Point:
    """Chord-tangent addition on the reduced curve."""
    if P is None:
        return Q
    if Q is None:
        return P
    if not (is_on_curve(curve, P, p) and is_on_curve(curve, Q, p)):
        raise ValueError("operand not on the curve")
    a1, a2, a3, a4, a6 = curve.coeffs_mod(p)
    x1, y1 = P[0] % p, P[1] % p
    x2, y2 = Q[0] % p, Q[1] % p
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return None
    if x1 == x2 and y1 == y2:
        d = (2 * y1 + a1 * x1 + a3) % p
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(d, -1, p) % p
        nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) * pow(d, -1, p) % p
    else:
        d = (x2 - x1) % p
        lam = (y2 - y1) * pow(d, -1, p) % p
        nu = (y1 * x2 - y2 * x1) * pow(d, -1, p) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return (x3, y3)


def scalar_mul(curve: Curve, k: int, P: Point, p: int) -> Point:
    """[k]P by double-and-add."""
    if k < 0:
        return scalar_mul(curve, -k, negate_point(curve, P, p), p)
    result: Point = None
    addend = P
    while k:
        if k & 1:
            result = add_points(curve, result, addend, p)
        addend = add_points(curve, addend, addend, p)
        k >>= 1
    return result


def random_point(curve: Curve, p: int, rng: random.Random) -> Point:
    """A uniform-ish affine point on the reduced curve."""
    curve._require_good(p)
    F = GF(p)
    a1, _, a3, _, _ = curve.coeffs_mod(p)
    b2, b4, b6 = F.coerce(curve.b2), F.coerce(curve.b4), F.coerce(curve.b6)
    inv2 = pow(2, -1, p)
    while True:
        x = rng.randrange(p)
        s = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        t = sqrt_mod(s, p)
        if t is None:
            continue
        if rng.randrange(2):
            t = (-t) % p
        y = (t - a1 * x - a3) * inv2 % p
        return (x, y)


# -- twists, torsion, CM models ----------------------------------------------


def eval_lattes_vs_group_law(
    curve: Curve, pmax: int, kmax: int, points: int, rng: random.Random
):
    """Cross-oracle: x([k]P) must equal L_k(x(P)) for random points P on
    the reduced curve, with O mapping to infinity.  Returns None when all
    checks agree, else a (p, k, point) descriptor of the first mismatch."""
    maps = {k: lattes_map(curve, k) for k in range(1, kmax + 1)}
    for p in curve.good_primes(pmax):
        reduced = {k: maps[k].reduce_mod_p(p) for k in maps}
        for _ in range(points):
            P = random_point(curve, p, rng)
            for k in range(1, kmax + 1):
                Q = scalar_mul(curve, k, P, p)
                expected = INFINITY if Q is None else Q[0]
                got = reduced[k].eval_proj(P[0])
                if got != expected and not (Q is None and got is INFINITY):
                    return (p, k, P)
    return None


def quadratic_twist(curve: Curve, d: int) -> Curve:
    """The quadratic twist y^2 = x^3 + d^2*a4*x + d^3*a6 of a short model."""
    if curve.a1 != 0 or curve.a2 != 0 or curve.a3 != 0:
        raise ValueError("quadratic_twist requires a short Weierstrass model")
    if d == 0 or not squarefree_part_known(d):
        raise ValueError(f"twist parameter {d} must be a nonzero squarefree integer")
    return Curve(0, 0, 0, d * d * curve.a4, d * d * d * curve.a6)


def torsion_x_rational(curve: Curve, k: int) -> set[Fraction]:
    """Rational x-coordinates of points P != O with [k]P = O.

    For even k the 2-torsion x-coordinates (roots of q) are included
    alongside the roots of the x-part of psi_k.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    roots = rational_roots(division_poly(curve, k)) if division_poly(curve, k).degree > 0 else set()
    if k % 2 == 0:
        roots |= rational_roots(curve.psi2_squared)
    return roots


def _factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _is_perfect_square(n: int) -> bool:
    return n > 0 and all(e % 2 == 0 for e in _factorize(n).values())


def _is_perfect_cube(n: int) -> bool:
    if n == 0:
        return False
    return all(e % 3 == 0 for e in _factorize(n).values())


def torsion_classify_Ed(d: int) -> str:
    """Torsion of y^2 = x^3 + d over Q for sixth-power-free d: one of
    'C1', 'C2', 'C3', 'C6'."""
    if d == 0:
        raise ValueError("d must be nonzero")
    if any(e >= 6 for e in _factorize(d).values()):
        raise ValueError(f"{d} is not sixth-power-free")
    if d == 1:
        return "C6"
    if _is_perfect_square(d) or d == -432:
        return "C3"
    if _is_perfect_cube(d):
        return "C2"
    return "C1"


# -- CM models and the curve catalog ------------------------------------------

_FIXED_CM_CURVES = {
    -4: (0, 0, 0, 1, 0),
    -8: (0, 1, 0, -3, 1),
    -7: (0, 0, 0, -35, 98),
    -19: (0, 0, 1, -38, 90),
}


def cm_model(D: int, u=1) -> Curve:
    """A rational model with CM by the order of discriminant D.

    D in {-3, -11, -12, -27} gives the one-parameter family in u; the other
    supported discriminants return a fixed representative curve (u is
    ignored for those).
    """
    u = _frac(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    if D == -3:
        return Curve(0, 0, 0, 0, u)
    if D == -11:
        return Curve(0, 0, 0, -264 * u**2, 1694 * u**3)
    if D == -12:
        return Curve(0, 0, 0, -15 * u**2, 22 * u**3)
    if D == -27:
        return Curve(0, 0, 0, -120 * u**2, 506 * u**3)
    if D in _FIXED_CM_CURVES:
        return Curve(*_FIXED_CM_CURVES[D])
    raise ValueError(f"unsupported CM discriminant {D}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    curve: Curve
    cm_disc: Optional[int]
    note: str


def _build_catalog() -> tuple[CatalogEntry, ...]:
    return (
        CatalogEntry("d4", cm_model(-4), -4, "j = 1728, torsion C2"),
        CatalogEntry("d8", cm_model(-8), -8, "j = 8000, torsion C2"),
        CatalogEntry("d7", cm_model(-7), -7, "j = -3375, torsion C2"),
        CatalogEntry("d12", cm_model(-12), -12, "j = 54000, torsion C6"),
        CatalogEntry("d19", cm_model(-19), -19, "j = -96^3, trivial torsion"),
        CatalogEntry("d27", cm_model(-27), -27, "j = -12288000, trivial torsion"),
        CatalogEntry("d3", cm_model(-3, 2), -3, "j = 0, trivial torsion"),
        CatalogEntry("d11", cm_model(-11), -11, "j = -2^15, trivial torsion"),
        CatalogEntry("noncm-e", Curve(0, 0, 0, -9, 12), None, "j = -5184, obstructed for 6 | k"),
        CatalogEntry("noncm-f", Curve(0, 0, 0, -60, 180), None, "j = -138240, obstructed for 6 | k"),
        CatalogEntry("k2-s3", Curve(0, 0, 0, 1, 1), None, "2-division field with group S3"),
        CatalogEntry("k2-c3", Curve(0, 0, 0, -3, 1), None, "2-division field with group C3"),
    )


CATALOG: tuple[CatalogEntry, ...] = _build_catalog()
CATALOG_BY_NAME: dict[str, CatalogEntry] = {e.name: e for e in CATALOG}


def catalog_entry_for(curve: Curve) -> Optional[CatalogEntry]:
    for entry in CATALOG:
        if entry.curve.ainvs() == curve.ainvs():
            return entry
    return None


def noncm_family(family: str, u: int) -> Curve:
    """The two obstructed non-CM families: 'E' is y^2 = x^3 - 9u^2 x + 12u^3
    and 'F' is y^2 = x^3 - 60u^2 x + 180u^3."""
    if u == 0:
        raise ValueError("u must be nonzero")
    if family == "E":
        return Curve(0, 0, 0, -9 * u * u, 12 * u**3)
    if family == "F":
        return Curve(0, 0, 0, -60 * u * u, 180 * u**3)
    raise ValueError("family must be 'E' or 'F'")
