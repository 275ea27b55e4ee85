"""Smooth-number sieves and greedy splitting of smooth integers into bounded factors."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, prod
from typing import Optional

import numpy as np

from .arith import ceil_power, euler_phi, floor_power
from .errors import DomainError, ResourceError

SIEVE_CAP_ENV = "PRODCONG_SIEVE_CAP"
DEFAULT_SIEVE_CAP = 10**7


def sieve_cap() -> int:
    return int(os.environ.get(SIEVE_CAP_ENV, DEFAULT_SIEVE_CAP))


@dataclass(frozen=True)
class SmoothTable:
    """Largest-prime-factor table over 1..x_max (lpf(1) = 1 by convention)."""

    x_max: int
    lpf: np.ndarray

    def largest_prime_factor(self, n: int) -> int:
        if not 1 <= n <= self.x_max:
            raise DomainError(f"n={n} beyond table (x_max={self.x_max})")
        return int(self.lpf[n])

    def factor_desc(self, n: int) -> list[int]:
        """Prime factors of n with multiplicity, nonincreasing."""
        if not 1 <= n <= self.x_max:
            raise DomainError(f"n={n} beyond table (x_max={self.x_max})")
        out = []
        lpf = self.lpf
        while n > 1:
            q = int(lpf[n])
            out.append(q)
            n //= q
        return out

    def psi(self, x: int, y: float) -> int:
        """Count of y-smooth n <= x (n = 1 is smooth for every y)."""
        if x < 0 or x > self.x_max:
            raise DomainError(f"x={x} beyond table (x_max={self.x_max})")
        if x == 0:
            return 0
        smooth = self.lpf[1 : x + 1] <= y
        smooth[0] = True  # n = 1 has no prime factor at all
        return int(smooth.sum())

    def psi_q(self, x: int, y: float, q: int) -> int:
        """Count of y-smooth n <= x with gcd(n, q) = 1."""
        if q < 1:
            raise DomainError("q must be >= 1")
        if x < 0 or x > self.x_max:
            raise DomainError(f"x={x} beyond table (x_max={self.x_max})")
        if x == 0:
            return 0
        smooth = self.lpf[1 : x + 1] <= y
        smooth[0] = True
        coprime = np.gcd(np.arange(1, x + 1, dtype=np.int64), q) == 1
        return int((smooth & coprime).sum())

    def unit_smooth_density(self, m: int, y: float) -> Fraction:
        """Measured share of units mod m that are y-smooth: psi_q(m, y, m) / phi(m)."""
        return Fraction(self.psi_q(m, y, m), euler_phi(m))


def build_smooth_table(x_max: int) -> SmoothTable:
    if x_max < 1:
        raise DomainError("x_max must be >= 1")
    if x_max > sieve_cap():
        raise ResourceError(
            f"x_max={x_max} exceeds sieve cap {sieve_cap()} (set {SIEVE_CAP_ENV} to raise)"
        )
    lpf = np.zeros(x_max + 1, dtype=np.int64)
    lpf[1:2] = 1
    for i in range(2, x_max + 1):
        if lpf[i] == 0:  # prime: overwrite every multiple, largest prime wins
            lpf[i::i] = i
    lpf.setflags(write=False)
    return SmoothTable(x_max, lpf)


_shared_table: Optional[SmoothTable] = None


def _shared(n: int) -> SmoothTable:
    global _shared_table
    if _shared_table is None or _shared_table.x_max < n:
        _shared_table = build_smooth_table(min(max(2 * n, 1024), sieve_cap()))
    return _shared_table


@dataclass(frozen=True)
class SmoothFactorization:
    """A smooth integer split as x = x_1 * ... * x_k with x_1 <= m**c and
    m**(c/2) <= x_j <= m**c for j >= 2; k never exceeds ceil(2/c0) + 1."""

    x: int
    m: int
    c0: float
    c: float
    parts: tuple[int, ...]

    def __post_init__(self):
        cap = floor_power(self.m, self.c)
        lo = ceil_power(self.m, self.c / 2)
        if prod(self.parts) != self.x:
            raise DomainError("parts do not multiply back to x")
        if not self.parts or self.parts[0] > cap:
            raise DomainError("leading part exceeds m**c")
        for part in self.parts[1:]:
            if not lo <= part <= cap:
                raise DomainError(f"part {part} outside [m**(c/2), m**c]")
        if len(self.parts) > ceil(2 / self.c0) + 1:
            raise DomainError("too many parts")

    @property
    def k(self) -> int:
        return len(self.parts)


def greedy_factor(
    x: int, m: int, c0: float, c: float, table: Optional[SmoothTable] = None
) -> SmoothFactorization:
    """Split an m**c0-smooth x <= m coprime to m into bounded parts.

    Greedy rule (fixed for determinism): list x's prime factors with
    multiplicity in descending order; repeatedly open a new part and multiply
    in successive primes while the part stays <= m**c; afterwards merge any
    two parts both below m**(c/2) (their product stays under the cap) until at
    most one small part remains, and place that unique small part first.
    """
    if x < 1:
        raise DomainError("x must be >= 1")
    if m < 2:
        raise DomainError("m must be >= 2")
    if not 0 < c0 <= c < 1:
        raise DomainError("exponents must satisfy 0 < c0 <= c < 1")
    if x > m:
        raise DomainError("x must be at most m")
    if x == 1:
        return SmoothFactorization(1, m, c0, c, (1,))
    smooth_bound = floor_power(m, c0)
    if smooth_bound < 2:
        raise DomainError("m**c0 < 2: no primes available")
    primes = (table or _shared(x)).factor_desc(x)
    if primes[0] > smooth_bound:
        raise DomainError(f"x={x} is not m**c0-smooth (lpf {primes[0]} > {smooth_bound})")

    cap = floor_power(m, c)
    lo = ceil_power(m, c / 2)
    parts: list[int] = []
    cur = 1
    for q in primes:
        if cur > 1 and cur * q > cap:
            parts.append(cur)
            cur = q
        else:
            cur *= q
    parts.append(cur)

    small = [part for part in parts if part < lo]
    big = [part for part in parts if part >= lo]
    while len(small) >= 2:  # provably dead (only the final part can be small)
        merged = small.pop() * small.pop()
        (big if merged >= lo else small).append(merged)
    return SmoothFactorization(x, m, c0, c, tuple(small + big))
