"""Exact integer arithmetic over residue rings: factorization, totients,
primitive roots, and dense discrete-log tables.

Everything here is deterministic: the Pollard-rho fallback walks a fixed
parameter schedule, so repeated runs factor identically.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import DomainError, ResourceError

TABLE_CAP_ENV = "PRODCONG_TABLE_CAP"
DEFAULT_TABLE_CAP = 1 << 22


def table_cap() -> int:
    """Cap on dense per-residue tables; override via PRODCONG_TABLE_CAP."""
    return int(os.environ.get(TABLE_CAP_ENV, DEFAULT_TABLE_CAP))


def _sieve_primes(limit: int) -> tuple[int, ...]:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for q in range(2, isqrt(limit) + 1):
        if mask[q]:
            mask[q * q :: q] = False
    return tuple(int(p) for p in np.nonzero(mask)[0])


_SMALL_PRIMES = _sieve_primes(4096)

# Bases making Miller-Rabin deterministic for all n < 3.3e24 (covers 64-bit).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n, via Brent's cycle search."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"cycle search failed on {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs with strictly increasing
    primes; factorize(1) == [] (the empty product)."""
    if n < 1:
        raise DomainError("factorize requires n >= 1")
    out: dict[int, int] = {}
    for q in _SMALL_PRIMES:
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    if n > 1:
        stack = [n]
        while stack:
            v = stack.pop()
            if is_prime(v):
                out[v] = out.get(v, 0) + 1
            else:
                d = _brent_rho(v)
                stack.append(d)
                stack.append(v // d)
    return sorted(out.items())


def euler_phi(n: int) -> int:
    """Count of 1 <= x <= n with gcd(x, n) = 1."""
    if n < 1:
        raise DomainError("euler_phi requires n >= 1")
    result = n
    for q, _ in factorize(n):
        result -= result // q
    return result


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi."""
    if hi < lo or hi < 2:
        return []
    mask = np.ones(hi + 1, dtype=bool)
    mask[:2] = False
    for q in range(2, isqrt(hi) + 1):
        if mask[q]:
            mask[q * q :: q] = False
    return [int(p) for p in np.nonzero(mask)[0] if p >= lo]


@dataclass(frozen=True)
class Modulus:
    """A modulus together with its factorization."""

    m: int
    is_prime: bool
    factorization: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, m: int) -> "Modulus":
        if m < 2:
            raise DomainError("modulus must be >= 2")
        fac = tuple(factorize(m))
        return cls(m, len(fac) == 1 and fac[0] == (m, 1), fac)

    @property
    def phi(self) -> int:
        result = self.m
        for q, _ in self.factorization:
            result -= result // q
        return result


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    if not is_prime(p):
        raise DomainError("primitive_root requires a prime modulus")
    if p == 2:
        return 1
    order_factors = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in order_factors):
            return g
    raise ArithmeticError("no primitive root found")


@dataclass(frozen=True)
class FieldContext:
    """A prime field with its smallest primitive root and full index table.

    dlog[x] is the exponent e with g**e == x (mod p) for x in 1..p-1;
    dlog[0] = -1 is a sentinel (0 has no index).
    """

    p: int
    g: int
    dlog: np.ndarray


@lru_cache(maxsize=64)
def _field_context(p: int) -> FieldContext:
    g = primitive_root(p)
    dlog = np.full(p, -1, dtype=np.int64)
    x = 1
    for e in range(p - 1):
        dlog[x] = e
        x = x * g % p
    dlog.setflags(write=False)
    return FieldContext(p, g, dlog)


def build_field_context(p: int) -> FieldContext:
    if not is_prime(p):
        raise DomainError("field modulus must be prime")
    if p > table_cap():
        raise ResourceError(
            f"p={p} exceeds the dense table cap {table_cap()} (set {TABLE_CAP_ENV} to raise)"
        )
    return _field_context(p)


@lru_cache(maxsize=65536)
def floor_power(base: int, exponent: float) -> int:
    """Largest integer t with t <= base**exponent.

    Float powering decides; when the exponent is exactly a small dyadic
    rational (1/2, 1/4, ...) the boundary is re-verified by integer powering,
    so cutoffs like base**0.5 are never off by one.
    """
    if base < 1:
        raise DomainError("floor_power requires base >= 1")
    if exponent < 0:
        raise DomainError("floor_power requires exponent >= 0")
    t = int(base**exponent)
    fr = Fraction(exponent)
    if fr.denominator <= 16:
        num, den = fr.numerator, fr.denominator
        ref = base**num
        while (t + 1) ** den <= ref:
            t += 1
        while t > 0 and t**den > ref:
            t -= 1
    return t


@lru_cache(maxsize=65536)
def ceil_power(base: int, exponent: float) -> int:
    """Smallest integer t with t >= base**exponent (see floor_power)."""
    f = floor_power(base, exponent)
    fr = Fraction(exponent)
    if fr.denominator <= 16:
        exact = f ** fr.denominator == base**fr.numerator
    else:
        exact = float(f) == base**exponent
    return f if exact else f + 1
