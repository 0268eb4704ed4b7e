"""The mod-m Galois viewpoint on the permutation criterion: the set C_m of
matrices A in GL_2(Z/m) with det(I-A)*det(I+A) invertible, exact densities
by enumeration, subgroup-restricted densities, the diagonal witness that
makes C_m nonempty, the Frobenius characteristic-polynomial bridge, the
complete k = 2 verdict from the 2-division cubic, and empirical density
scans over prime ranges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .elliptic import Curve, count_points, rational_roots
from .exceptionality import frobenius_scan


@dataclass(frozen=True)
class Mat2Zm:
    """A matrix [[a, b], [c, d]] over Z/m, required invertible."""

    m: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("modulus must be >= 1")
        for f in "abcd":
            object.__setattr__(self, f, getattr(self, f) % self.m)
        if gcd(self.det(), self.m) != 1:
            raise ValueError(f"matrix not invertible mod {self.m}")

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.m

    def __mul__(self, other: "Mat2Zm") -> "Mat2Zm":
        if self.m != other.m:
            raise ValueError("mixed moduli")
        m = self.m
        return Mat2Zm(
            m,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @staticmethod
    def identity(m: int) -> "Mat2Zm":
        return Mat2Zm(m, 1, 0, 0, 1)


def in_Cm(A: Mat2Zm) -> bool:
    """Membership in C_m: det(I - A) * det(I + A) is a unit mod m; this is
    exactly the condition for Frobenius data landing on A to let L_m
    permute the projective line."""
    m = A.m
    det_minus = ((1 - A.a) * (1 - A.d) - A.b * A.c) % m
    det_plus = ((1 + A.a) * (1 + A.d) - A.b * A.c) % m
    return gcd(det_minus * det_plus, m) == 1


def gl2_elements(m: int):
    """All of GL_2(Z/m) by enumeration (use only for small m)."""
    for a, b, c, d in itertools.product(range(m), repeat=4):
        if gcd((a * d - b * c) % m, m) == 1:
            yield Mat2Zm(m, a, b, c, d)


def cm_density_full(m: int) -> Fraction:
    """|C_m| / |GL_2(Z/m)| by full enumeration, for 2 <= m <= 12."""
    if m == 1:
        return Fraction(1)
    if not 2 <= m <= 12:
        raise ValueError("enumeration guard: 2 <= m <= 12")
    total = hits = 0
    for A in gl2_elements(m):
        total += 1
        if in_Cm(A):
            hits += 1
    return Fraction(hits, total)


@dataclass(frozen=True)
class SubgroupSpec:
    """A subgroup of GL_2(Z/m) given by generators; the closure is
    computed and must stay finite under the given bound."""

    m: int
    generators: tuple[Mat2Zm, ...]

    def closure(self, bound: int = 10**6) -> set[Mat2Zm]:
        elems = {Mat2Zm.identity(self.m)}
        frontier = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
                        if len(elems) > bound:
                            raise ValueError("subgroup closure exceeded bound")
            frontier = nxt
        return elems


def cm_density_subgroup(spec: SubgroupSpec) -> Fraction:
    """|C_m intersect H| / |H| over the generated closure H."""
    H = spec.closure()
    hits = sum(1 for A in H if in_Cm(A))
    return Fraction(hits, len(H))


def _prime_divisors(m: int) -> list[int]:
    out = []
    n, d = m, 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def diag_witness(a: int, m: int) -> Mat2Zm:
    """diag(a, -a^{-1}) lies in C_m whenever a is a unit with a != +-1
    modulo every prime dividing m; the membership is re-checked."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    for ell in _prime_divisors(m):
        if a % ell in (1 % ell, (-1) % ell):
            raise ValueError(f"{a} = +-1 mod {ell}")
    A = Mat2Zm(m, a, 0, 0, (-pow(a, -1, m)) % m)
    if not in_Cm(A):
        raise ArithmeticError("diagonal witness failed the C_m check")
    return A


def frobenius_congruence_check(curve: Curve, p: int, ell: int) -> bool:
    """The bridge between the gcd criterion and the mod-ell viewpoint: the
    characteristic polynomial T^2 - a_p T + p has T = 1 as a root mod ell
    exactly when ell | p + 1 - a_p, and T = -1 exactly when
    ell | p + 1 + a_p.  Both directions are evaluated independently."""
    if p == ell:
        raise ValueError("p and ell must differ")
    _, ap = count_points(curve, p)
    ok_plus = ((p + 1 - ap) % ell == 0) == ((1 - ap + p) % ell == 0)
    ok_minus = ((p + 1 + ap) % ell == 0) == ((1 + ap + p) % ell == 0)
    return ok_plus and ok_minus


def _fraction_is_square(x: Fraction) -> bool:
    if x < 0:
        return False
    from math import isqrt

    return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator


def k2_verdict(curve: Curve) -> tuple[bool, str, Optional[Fraction]]:
    """(exceptional, galois_type, predicted_density) for k = 2.

    The 2-division cubic having a rational root makes L_2 non-exceptional
    ('reducible', no density).  Otherwise L_2 is exceptional, and the
    Galois group of the 2-division field, read from the square class of
    the cubic discriminant, predicts the density of permutation primes:
    2/3 for C3 and 1/3 for S3.
    """
    q = curve.psi2_squared
    cubic = q.scale(Fraction(1, 4)).monic()
    if rational_roots(cubic):
        return False, "reducible", None
    c2, c1, c0 = cubic.coeffs[2], cubic.coeffs[1], cubic.coeffs[0]
    disc = (
        18 * c2 * c1 * c0 - 4 * c2**3 * c0 + c2**2 * c1**2 - 4 * c1**3 - 27 * c0**2
    )
    if _fraction_is_square(Fraction(disc)):
        return True, "C3", Fraction(2, 3)
    return True, "S3", Fraction(1, 3)


def empirical_density(
    curve: Curve, k: int, pmax: int, workers: int = 1
) -> Fraction:
    """Fraction of good primes p <= pmax at which the gcd criterion says
    L_k permutes P^1(F_p); bad primes are excluded from both sides."""
    if pmax < 100:
        raise ValueError("pmax must be >= 100")
    good = curve.good_primes(pmax)
    traces = frobenius_scan(curve, good, workers=workers)
    hits = 0
    for p in good:
        ap = traces[p]
        if gcd((p + 1) ** 2 - ap * ap, k) == 1:
            hits += 1
    return Fraction(hits, len(good))
