"""Multiplicative characters mod p and product-collision energies.

Characters are realized through the discrete-log table: chi_j(x) is the
(j * dlog[x])-th root of unity of order p-1, chi_j(0) = 0, and j = 0 is the
principal character. The collision count J (solutions of x1 y1 = x2 y2) is
always computed exactly by multiplicity histogram; the character identity is
evaluated numerically as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import e as _E
from typing import Iterable, NamedTuple, Union

import numpy as np

from .arith import FieldContext, is_prime
from .errors import DomainError, ResourceError
from .residues import Interval, ResidueSet, WitnessedSet, product_set

Values = Union[Interval, ResidueSet, WitnessedSet, Iterable[int]]


@lru_cache(maxsize=64)
def _unit_roots(order: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(order) / order)
    roots.setflags(write=False)
    return roots


def _unit_members(values: Values, p: int) -> np.ndarray:
    """Normalize a set-like argument to a sorted array of units in 1..p-1."""
    if isinstance(values, WitnessedSet):
        values = values.base
    if isinstance(values, ResidueSet):
        if values.modulus != p:
            raise DomainError("modulus mismatch")
        if values.contains_zero:
            raise DomainError("0 is not a unit")
        return values.members
    if isinstance(values, Interval):
        if values.modulus != p:
            raise DomainError("modulus mismatch")
        if values.contains_zero:
            raise DomainError("0 is not a unit")
        return np.sort(values.members())
    arr = np.array(sorted({int(v) for v in values}), dtype=np.int64)
    if arr.size and (arr[0] < 1 or arr[-1] >= p):
        raise DomainError("members must lie in 1..p-1")
    return arr


def char_sum(ctx: FieldContext, j: int, values: Values) -> complex:
    """Sum of chi_j over the given units."""
    p = ctx.p
    if not 0 <= j <= max(p - 2, 0):
        raise DomainError(f"character index must lie in 0..{p - 2}")
    members = _unit_members(values, p)
    if members.size == 0:
        return 0j
    roots = _unit_roots(p - 1)
    return complex(roots[(j * ctx.dlog[members]) % (p - 1)].sum())


def product_energy(x_values: Values, y_values: Values, p: int) -> int:
    """Exact count of quadruples with x1*y1 == x2*y2 (mod p): the sum of
    squared multiplicities of the product multiset."""
    if not is_prime(p):
        raise DomainError("p must be prime")
    xm = _unit_members(x_values, p)
    ym = _unit_members(y_values, p)
    counts = np.zeros(p, dtype=np.int64)
    for v in xm.tolist():
        # x fixed: products x*y are pairwise distinct, so plain fancy add is exact
        counts[(v * ym) % p] += 1
    nz = counts[counts > 0]
    if nz.size == 0:
        return 0
    if int(nz.max()) ** 2 * nz.size < 2**62:
        return int(np.dot(nz, nz))
    return sum(int(v) ** 2 for v in nz)


def product_energy_via_characters(
    ctx: FieldContext, x_values: Values, y_values: Values
) -> float:
    """Evaluate (1/(p-1)) * sum over all characters of |S_X(chi)|^2 |S_Y(chi)|^2.

    The per-character sums are the DFT of the dlog-indicator vectors, so the
    whole spectrum comes from two FFTs. Must agree with product_energy within
    floating tolerance.
    """
    p = ctx.p
    xm = _unit_members(x_values, p)
    ym = _unit_members(y_values, p)
    n = p - 1
    fx = np.zeros(n)
    fx[ctx.dlog[xm]] = 1.0
    fy = np.zeros(n)
    fy[ctx.dlog[ym]] = 1.0
    tx = np.abs(np.fft.fft(fx)) ** 2
    ty = np.abs(np.fft.fft(fy)) ** 2
    return float((tx * ty).sum() / n)


def multiplicative_energy(limit: int, n0: int, p: int) -> int:
    """Exact count of 2*n0-tuples from {1..limit} with equal half-products mod p.

    Counted by iterating the residue histogram of k-fold products; counts stay
    exact integers throughout (products are reduced mod p, never materialized).
    """
    if not is_prime(p):
        raise DomainError("p must be prime")
    if n0 < 1:
        raise DomainError("n0 must be >= 1")
    if not 1 <= limit < p:
        raise DomainError("limit must satisfy 1 <= N < p")
    if limit**n0 >= 2**62:
        raise ResourceError("histogram counts would overflow the 64-bit budget")
    hist = np.zeros(p, dtype=np.int64)
    hist[1 : limit + 1] = 1
    residues = np.arange(p, dtype=np.int64)
    for _ in range(n0 - 1):
        nxt = np.zeros(p, dtype=np.int64)
        for y in range(1, limit + 1):
            # y is a unit, so y*residues is a permutation: scatter-add is exact
            nxt[(y * residues) % p] += hist
        hist = nxt
    nz = hist[hist > 0]
    if int(nz.max()) ** 2 * nz.size < 2**62:
        return int(np.dot(nz, nz))
    return sum(int(v) ** 2 for v in nz)


class BoundCheck(NamedTuple):
    lhs: int
    rhs: Fraction


def product_bound_check(x_values: Values, y_values: Values, p: int) -> BoundCheck:
    """Both sides of the Cauchy-Schwarz product-set bound: |XY| on the left,
    |X|^2 |Y|^2 / J on the right. |XY| * J >= |X|^2 |Y|^2 holds exactly."""
    xm = _unit_members(x_values, p)
    ym = _unit_members(y_values, p)
    if xm.size == 0 or ym.size == 0:
        raise DomainError("sets must be nonempty")
    j = product_energy(xm, ym, p)
    card = product_set(
        ResidueSet.from_members(p, xm), ResidueSet.from_members(p, ym)
    ).cardinality
    return BoundCheck(card, Fraction(int(xm.size) ** 2 * int(ym.size) ** 2, j))


def product_growth_bound(p: int, card_x: int, length: int, n0: int) -> float:
    """The diagnostic expansion factor min{(p/|X|)^(1/n0), N/|X|^(1/n0)} with
    the asymptotic N^o(1) slack dropped. Reported only, never asserted."""
    if min(p, card_x, length, n0) < 1:
        raise DomainError("all arguments must be positive")
    return min((p / card_x) ** (1.0 / n0), length / card_x ** (1.0 / n0))


class CharProfile(NamedTuple):
    max_ratio: float
    argmax_j: int


def burgess_profile(ctx: FieldContext, interval_len: int) -> CharProfile:
    """Worst normalized character sum over the initial interval {1..len}:
    max over nonprincipal chi of |sum chi(n)| / len, and the character index
    attaining it (smallest such j). Measurement only."""
    p = ctx.p
    if not 1 <= interval_len < p:
        raise DomainError("interval length must satisfy 1 <= len < p")
    if p < 3:
        raise DomainError("no nonprincipal characters exist for p < 3")
    ind = np.zeros(p - 1)
    ind[ctx.dlog[np.arange(1, interval_len + 1)]] = 1.0
    mags = np.abs(np.fft.fft(ind))
    j = 1 + int(np.argmax(mags[1:]))
    return CharProfile(float(mags[j] / interval_len), j)


@dataclass(frozen=True)
class EnergyDiagnostic:
    """Collision-count diagnostics for X x {1..length} mod p."""

    p: int
    card_x: int
    length: int
    n0: int
    j_direct: int
    j_char: float
    bound_delta: float


def energy_diagnostic(
    ctx: FieldContext, x_values: Values, length: int, n0: int
) -> EnergyDiagnostic:
    p = ctx.p
    xm = _unit_members(x_values, p)
    if not 1 <= length < p:
        raise DomainError("length must satisfy 1 <= N < p")
    y = range(1, length + 1)
    return EnergyDiagnostic(
        p=p,
        card_x=int(xm.size),
        length=length,
        n0=n0,
        j_direct=product_energy(xm, y, p),
        j_char=product_energy_via_characters(ctx, xm, y),
        bound_delta=product_growth_bound(p, int(xm.size), length, n0),
    )


def nonresidue_cap(p: int, ell: int) -> float:
    """The classical diagnostic ceiling p**(1/(4*e^((ell-1)/ell))) for the least
    ell-th power nonresidue (epsilon slack dropped; never asserted)."""
    if ell < 1:
        raise DomainError("ell must be >= 1")
    return p ** (1.0 / (4.0 * _E ** ((ell - 1) / ell)))
