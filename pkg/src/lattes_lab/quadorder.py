"""Arithmetic in imaginary quadratic orders of class number one.

An order of discriminant D < 0 is handled on the basis {1, w} where

* D = 0 (mod 4):  w = sqrt(D/4),          so w^2 = D/4,
* D = -3:         w = (-1 + sqrt(-3))/2,  a primitive cube root of unity,
* other D = 1 (mod 4):  w = (1 + sqrt(D))/2.

The cube-root convention for D = -3 is what makes the Eisenstein symbol
machinery read naturally (elements like -1+3w have norm 13); the remaining
odd discriminants use the (1+sqrt(D))/2 generator, so for D = -11 the
element w itself has norm 3.  Norms come from the binary quadratic form
N(a + b*w) = a^2 + s*a*b + n*b^2 where s = w + wbar and n = w*wbar.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Optional

from .elliptic import Curve, count_points
from .intmath import is_prime, kronecker

CLASS_NUMBER_ONE_DISCS = (-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163)


@functools.lru_cache(maxsize=None)
def quad_order(D: int) -> "QuadOrder":
    return QuadOrder(D)


class QuadOrder:
    """An imaginary quadratic order of class number one; use quad_order(D)."""

    def __init__(self, D: int):
        if D not in CLASS_NUMBER_ONE_DISCS:
            raise ValueError(f"unsupported discriminant {D}")
        self.D = D
        if D % 4 == 0:
            self.s, self.n = 0, -D // 4
        elif D == -3:
            self.s, self.n = -1, 1
        else:
            self.s, self.n = 1, (1 - D) // 4

    def __repr__(self):
        return f"QuadOrder({self.D})"

    @property
    def omega(self) -> "QuadInt":
        return QuadInt(self, 0, 1)

    def element(self, a: int, b: int = 0) -> "QuadInt":
        return QuadInt(self, a, b)

    def units(self) -> list["QuadInt"]:
        one = self.element(1)
        if self.D == -3:
            w = self.omega
            w2 = w * w
            return [one, -one, w, -w, w2, -w2]
        if self.D == -4:
            i = self.omega
            return [one, -one, i, -i]
        return [one, -one]


@dataclass(frozen=True)
class QuadInt:
    """a + b*w in a fixed imaginary quadratic order."""

    order: QuadOrder
    a: int
    b: int

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.order, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.order, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadInt":
        return QuadInt(self.order, -self.a, -self.b)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        s, n = self.order.s, self.order.n
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadInt(self.order, a * c - n * b * d, a * d + b * c + s * b * d)

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            raise ValueError("negative power in the order")
        result = QuadInt(self.order, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def conj(self) -> "QuadInt":
        return QuadInt(self.order, self.a + self.order.s * self.b, -self.b)

    def norm(self) -> int:
        s, n = self.order.s, self.order.n
        return self.a * self.a + s * self.a * self.b + n * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.order.s * self.b

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def _check(self, other: "QuadInt"):
        if self.order is not other.order:
            raise ValueError("mixed quadratic orders")

    def __repr__(self):
        return f"({format_quadint(self)} : D={self.order.D})"


def format_quadint(z: QuadInt) -> str:
    """Render as 'a+b*w' with minimal clutter, e.g. '47+11*w', '-1+3*w', '5'."""
    a, b = z.a, z.b
    if b == 0:
        return str(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{b}*w"
    if a == 0:
        return wpart
    sign = "+" if not wpart.startswith("-") else ""
    return f"{a}{sign}{wpart}"


def _parse_wterm(t: str) -> int:
    # 'w', '-w', '3w', '-3*w', '+11w' -> the coefficient of w
    m = re.fullmatch(r"([+-]?)(\d*)\*?w", t)
    if not m:
        raise ValueError(f"cannot parse {t!r} as a w-term")
    sign, digits = m.groups()
    b = int(digits) if digits else 1
    return -b if sign == "-" else b


def parse_quadint(text: str, D: int) -> QuadInt:
    """Parse 'a+b*w' (also bare 'a', 'b*w', 'bw', 'w', '-w') in the order
    of discriminant D."""
    order = quad_order(D)
    t = text.replace(" ", "")
    if re.fullmatch(r"[+-]?\d+", t):
        return order.element(int(t))
    m = re.fullmatch(r"([+-]?\d+)([+-]\d*\*?w)", t)
    if m:
        return order.element(int(m.group(1)), _parse_wterm(m.group(2)))
    return order.element(0, _parse_wterm(t))


def congruent(alpha: QuadInt, beta: QuadInt, mu: QuadInt) -> bool:
    """Whether mu divides alpha - beta exactly in the order.

    Exact division: mu | z iff N(mu) divides both coordinates of z*conj(mu).
    """
    if mu.is_zero:
        raise ValueError("zero modulus")
    alpha._check(beta)
    alpha._check(mu)
    z = (alpha - beta) * mu.conj()
    nm = mu.norm()
    return z.a % nm == 0 and z.b % nm == 0


def exact_div(alpha: QuadInt, mu: QuadInt) -> QuadInt:
    z = alpha * mu.conj()
    nm = mu.norm()
    if z.a % nm or z.b % nm:
        raise ValueError(f"{alpha} not divisible by {mu}")
    return QuadInt(alpha.order, z.a // nm, z.b // nm)


def splitting_type(D: int, p: int) -> str:
    """'split', 'inert' or 'ramified' per the Kronecker symbol (D/p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = kronecker(D, p)
    return {1: "split", -1: "inert", 0: "ramified"}[k]


def norm_solutions(D: int, m: int) -> list[tuple[int, int]]:
    """All (a, b) with N(a + b*w) = m, ordered by (|b|, |a|, a < 0, b < 0)."""
    order = quad_order(D)
    s, n = order.s, order.n
    sols = []
    absD = -D
    bmax = isqrt(4 * m // absD)
    for b in range(-bmax, bmax + 1):
        # a = (-s*b +- t)/2 with t^2 = 4m - |D| b^2
        t2 = 4 * m - absD * b * b
        if t2 < 0:
            continue
        t = isqrt(t2)
        if t * t != t2:
            continue
        for tt in {t, -t}:
            num = -s * b + tt
            if num % 2 == 0:
                a = num // 2
                if order.element(a, b).norm() == m:
                    sols.append((a, b))
    sols = sorted(set(sols), key=lambda ab: (abs(ab[1]), abs(ab[0]), ab[0] < 0, ab[1] < 0))
    return sols


def prime_above(D: int, ell: int) -> QuadInt:
    """An element of norm ell when ell splits or ramifies, or ell itself
    when inert; ties are broken by minimal (|b|, |a|) with positive signs
    preferred, so outputs are reproducible."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    order = quad_order(D)
    if splitting_type(D, ell) == "inert":
        return order.element(ell)
    sols = norm_solutions(D, ell)
    if not sols:
        # splits in the field but not represented by the (non-maximal) order
        raise ValueError(f"no element of norm {ell} in the order of discriminant {D}")
    a, b = sols[0]
    return order.element(a, b)


def cornacchia(D: int, p: int) -> Optional[tuple[int, int]]:
    """A solution (t, s) of 4p = t^2 + |D| s^2 with s >= 1, or None when p
    is inert.  The solution with smallest s is returned."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % abs(D) == 0 or kronecker(D, p) == 0:
        raise ValueError(f"{p} ramifies in discriminant {D}")
    absD = -D
    target = 4 * p
    smax = isqrt(target // absD)
    for s in range(1, smax + 1):
        t2 = target - absD * s * s
        t = isqrt(t2)
        if t * t == t2:
            return t, s
    return None


def find_prime_element(
    D: int,
    constraints: Iterable[tuple[QuadInt, QuadInt]],
    norm_bound: int,
    count: int,
) -> list[QuadInt]:
    """Up to `count` elements pi, ascending in norm, such that N(pi) is a
    split rational prime <= norm_bound and pi = target (mod modulus) for
    every (target, modulus) constraint.

    The search enumerates all coordinates within the norm bound, so the
    result is exhaustive up to the bound and deterministic.
    """
    order = quad_order(D)
    constraints = list(constraints)
    for target, modulus in constraints:
        if modulus.is_zero:
            raise ValueError("zero modulus in constraint")
    s, n = order.s, order.n
    absD = -D
    found = []
    bmax = isqrt(4 * norm_bound // absD)
    for b in range(-bmax, bmax + 1):
        disc = 4 * norm_bound - absD * b * b
        if disc < 0:
            continue
        half = isqrt(disc)
        lo = (-s * b - half - 1) // 2
        hi = (-s * b + half) // 2 + 1
        for a in range(lo, hi + 1):
            z = order.element(a, b)
            nz = z.norm()
            if nz > norm_bound or nz < 2:
                continue
            if not is_prime(nz) or kronecker(D, nz) != 1:
                continue
            if all(congruent(z, t, m) for t, m in constraints):
                found.append(z)
    found.sort(key=lambda z: (z.norm(), abs(z.b), abs(z.a), z.a < 0, z.b < 0))
    return found[:count]


def deuring_consistency(curve: Curve, D: int, p: int) -> bool:
    """Check the CM trace constraint at p: inert primes force a_p = 0 and
    split primes force 4p - a_p^2 = |D| s^2 for some s >= 1."""
    if p % abs(D) == 0:
        raise ValueError(f"{p} divides the discriminant {D}")
    _, ap = count_points(curve, p)
    kind = splitting_type(D, p)
    if kind == "inert":
        return ap == 0
    rem = 4 * p - ap * ap
    if rem % (-D) != 0:
        return False
    s2 = rem // (-D)
    return s2 >= 1 and isqrt(s2) ** 2 == s2
