"""Exact integer arithmetic: primality, Kronecker symbols, modular square
roots, and congruence-constrained prime streams.

Everything works on plain Python integers and is deterministic: primality
uses a strong-pseudoprime witness set proven correct below 2**64, modular
square roots are tie-broken to the root in [0, p/2], and prime streams are
emitted in ascending order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Iterator, Optional

# Strong-pseudoprime witnesses proving correctness for all n < 3.317e24
# (covers the full 64-bit range).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA_ROUNDS = 40

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _strong_probable_prime(n: int, a: int) -> bool:
    if a % n == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = (x * x) % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality of |n|.

    Deterministic for |n| < 2**64 (fixed witness set); above that the test
    is probabilistic with 40 extra pseudorandom rounds seeded by n, so
    repeated calls agree.
    """
    n = abs(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    for a in _MR_WITNESSES:
        if not _strong_probable_prime(n, a):
            return False
    if n >= 1 << 64:
        rng = random.Random(n)
        for _ in range(_MR_EXTRA_ROUNDS):
            if not _strong_probable_prime(n, rng.randrange(2, n - 1)):
                return False
    return True


def _jacobi(a: int, m: int) -> int:
    # m odd and positive
    a %= m
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), n != 0.

    For an odd prime n and gcd(a, n) = 1 this is the Legendre symbol.
    """
    if n == 0:
        raise ValueError("Kronecker symbol undefined for modulus 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        # (a/2) per a mod 8
        two = 1 if a % 8 in (1, 7) else -1
        while n % 2 == 0:
            n //= 2
            result *= two
    return result * _jacobi(a, n) if n > 1 else result


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Square root of a modulo an odd prime p, or None for a non-residue.

    Returns the root in [0, p/2] so results are reproducible.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError("modulus must be an odd prime")
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks
        q = p - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = (t2 * t2) % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, (b * b) % p
            t, r = (t * c) % p, (r * b) % p
    return min(r, p - r)


@dataclass(frozen=True)
class CongruenceCondition:
    """A residue-class constraint n = residue (mod modulus)."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def holds(self, n: int) -> bool:
        return n % self.modulus == self.residue


def _merge_congruences(conds: Iterable[CongruenceCondition]) -> Optional[tuple[int, int]]:
    """CRT-merge conditions to a single class (r, M), or None if incompatible."""
    r, m = 0, 1
    for cond in conds:
        r2, m2 = cond.residue, cond.modulus
        g = gcd(m, m2)
        if (r2 - r) % g != 0:
            return None
        lcm = m // g * m2
        # r + m*t = r2 (mod m2)  =>  t = (r2-r)/g * inv(m/g) (mod m2/g)
        t = ((r2 - r) // g * pow(m // g, -1, m2 // g)) % (m2 // g) if m2 != g else 0
        r = (r + m * t) % lcm
        m = lcm
    return r, m


def prime_stream(conds: Iterable[CongruenceCondition]) -> Iterator[int]:
    """Ascending primes satisfying every condition (empty if incompatible)."""
    merged = _merge_congruences(list(conds))
    if merged is None:
        return
    r, m = merged
    g = gcd(r, m)
    if g > 1:
        # every member of the class is divisible by g: at most one prime
        if is_prime(g) and g % m == r:
            yield g
        return
    n = r if r >= 2 else r + m * ((2 - r + m - 1) // m)
    if m == 1:
        n = 2
    while True:
        if is_prime(n):
            yield n
        n += m


def primes_in_congruence(conds: Iterable[CongruenceCondition], limit: int) -> list[int]:
    """Ascending primes p <= limit satisfying every condition.

    An incompatible system yields the empty list rather than an error, so
    callers may probe compatibility.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    out = []
    for p in prime_stream(conds):
        if p > limit:
            break
        out.append(p)
    return out


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit by sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, limit + 1) if sieve[i]]


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_part_known(n: int) -> bool:
    """True if n is squarefree (trial division; intended for desk-scale n)."""
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True
