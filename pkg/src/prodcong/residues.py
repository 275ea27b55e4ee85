"""Intervals and dense residue sets over Z_m.

Sets are boolean membership masks, so the product/sum kernels are exact
vectorized loops, and everything is immutable after construction. Sets may
contain 0 in general; operations that only make sense over the unit group
validate 0-exclusion at their own boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .arith import is_prime
from .errors import DomainError

# Pairwise kernels materialize an |S| x |T| outer table below this many cells
# and fall back to row-at-a-time loops above it.
_OUTER_CELL_CAP = 1 << 24


@dataclass(frozen=True)
class Interval:
    """The wrap-aware progression {offset+1, ..., offset+length} mod modulus."""

    offset: int
    length: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError("interval modulus must be >= 1")
        if not 1 <= self.length <= self.modulus:
            raise DomainError("interval length must satisfy 1 <= N <= m")
        object.__setattr__(self, "offset", self.offset % self.modulus)

    def members(self) -> np.ndarray:
        """Member residues in progression order (may wrap past 0)."""
        start = (self.offset + 1) % self.modulus
        return (start + np.arange(self.length, dtype=np.int64)) % self.modulus

    def __len__(self) -> int:
        return self.length

    def __contains__(self, x: int) -> bool:
        i = (int(x) - self.offset) % self.modulus
        return self.length == self.modulus or 1 <= i <= self.length

    @property
    def contains_zero(self) -> bool:
        return 0 in self

    def to_set(self) -> "ResidueSet":
        mask = np.zeros(self.modulus, dtype=bool)
        start = (self.offset + 1) % self.modulus
        end = start + self.length
        if end <= self.modulus:
            mask[start:end] = True
        else:
            mask[start:] = True
            mask[: end - self.modulus] = True
        return ResidueSet(self.modulus, mask)


class ResidueSet:
    """Dense, immutable membership structure over Z_m."""

    __slots__ = ("_modulus", "_mask", "_members")

    def __init__(self, modulus: int, mask: np.ndarray):
        if modulus < 1:
            raise DomainError("modulus must be >= 1")
        arr = np.asarray(mask, dtype=bool)
        if arr.shape != (modulus,):
            raise DomainError("mask length must equal the modulus")
        arr = arr.copy()
        arr.setflags(write=False)
        self._modulus = modulus
        self._mask = arr
        self._members: Optional[np.ndarray] = None

    @classmethod
    def from_members(cls, modulus: int, members: Iterable[int]) -> "ResidueSet":
        mask = np.zeros(modulus, dtype=bool)
        for x in members:
            mask[int(x) % modulus] = True
        return cls(modulus, mask)

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def members(self) -> np.ndarray:
        """Member residues, ascending."""
        if self._members is None:
            mem = np.nonzero(self._mask)[0].astype(np.int64)
            mem.setflags(write=False)
            self._members = mem
        return self._members

    @property
    def cardinality(self) -> int:
        return len(self.members)

    @property
    def contains_zero(self) -> bool:
        return bool(self._mask[0])

    def __len__(self) -> int:
        return self.cardinality

    def __contains__(self, x: int) -> bool:
        return bool(self._mask[int(x) % self._modulus])

    def __iter__(self):
        return iter(self.members.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self._modulus == other._modulus and bool(
            np.array_equal(self._mask, other._mask)
        )

    def __repr__(self) -> str:
        shown = self.members[:8].tolist()
        tail = ", ..." if self.cardinality > 8 else ""
        return f"ResidueSet(m={self._modulus}, {{{', '.join(map(str, shown))}{tail}}})"


def interval_to_set(interval: Interval) -> ResidueSet:
    return interval.to_set()


@lru_cache(maxsize=512)
def units_mask(m: int) -> np.ndarray:
    """Boolean mask of residues coprime to m."""
    mask = np.gcd(np.arange(m, dtype=np.int64), m) == 1
    mask.setflags(write=False)
    return mask


def _check_same_modulus(s: ResidueSet, t: ResidueSet) -> None:
    if s.modulus != t.modulus:
        raise DomainError("modulus mismatch")


def _pairwise_mask(m: int, left: np.ndarray, right: np.ndarray, op) -> np.ndarray:
    out = np.zeros(m, dtype=bool)
    if left.size == 0 or right.size == 0:
        return out
    if left.size * right.size <= _OUTER_CELL_CAP:
        out[(op(left[:, None], right[None, :]) % m).reshape(-1)] = True
        return out
    short, long_ = (left, right) if left.size <= right.size else (right, left)
    for v in short.tolist():
        out[op(v, long_) % m] = True
    return out


def product_set(s: ResidueSet, t: ResidueSet) -> ResidueSet:
    """Exact pairwise-product set {st : s in S, t in T} mod m."""
    _check_same_modulus(s, t)
    return ResidueSet(s.modulus, _pairwise_mask(s.modulus, s.members, t.members, np.multiply))


def sum_set(s: ResidueSet, t: ResidueSet) -> ResidueSet:
    """Exact pairwise-sum set {s + t} mod m."""
    _check_same_modulus(s, t)
    return ResidueSet(s.modulus, _pairwise_mask(s.modulus, s.members, t.members, np.add))


def scale_set(factor: int, s: ResidueSet) -> ResidueSet:
    """Image of S under multiplication by a fixed residue.

    Preserves cardinality exactly when gcd(factor, m) = 1; any factor is
    accepted (the image may then collapse).
    """
    mask = np.zeros(s.modulus, dtype=bool)
    mask[(int(factor) * s.members) % s.modulus] = True
    return ResidueSet(s.modulus, mask)


@dataclass
class WitnessedSet:
    """A residue set whose members each carry one factorization witness.

    witness maps each member to a factor tuple whose product is the member
    mod m; it is None when the set was built without witness tracking.
    """

    base: ResidueSet
    witness: Optional[dict[int, tuple[int, ...]]] = None

    @property
    def modulus(self) -> int:
        return self.base.modulus

    @property
    def members(self) -> np.ndarray:
        return self.base.members

    @property
    def mask(self) -> np.ndarray:
        return self.base.mask

    @property
    def cardinality(self) -> int:
        return self.base.cardinality

    def __len__(self) -> int:
        return self.base.cardinality

    def __contains__(self, x: int) -> bool:
        return x in self.base

    def verify(self) -> None:
        """Check every stored witness multiplies to its member (DomainError if not)."""
        if self.witness is None:
            raise DomainError("set carries no witnesses")
        m = self.base.modulus
        if set(self.witness) != {int(x) for x in self.base.members}:
            raise DomainError("witness keys do not match the member set")
        for r, factors in self.witness.items():
            if prod(factors) % m != r % m:
                raise DomainError(f"witness for {r} multiplies to {prod(factors) % m}")


def _combine_witnessed(
    m: int, u: dict[int, tuple[int, ...]], v: dict[int, tuple[int, ...]]
) -> dict[int, tuple[int, ...]]:
    # First-found witness wins, enumerating (u-member, v-member) pairs in
    # ascending lexicographic order.
    out: dict[int, tuple[int, ...]] = {}
    v_items = sorted(v.items())
    for ru in sorted(u):
        wu = u[ru]
        for rv, wv in v_items:
            r = ru * rv % m
            if r not in out:
                out[r] = wu + wv
    return out


def iterated_interval_product(
    intervals: Iterable[Interval], with_witness: bool = False
) -> WitnessedSet:
    """Product set of all the intervals, meet-in-the-middle.

    The interval list splits into two halves; each half folds its intervals
    smallest-first, and one final product joins the halves. When witnesses are
    requested, every member carries one factor per interval, aligned with the
    original interval order.
    """
    ivs = list(intervals)
    if not ivs:
        raise DomainError("need at least one interval")
    m = ivs[0].modulus
    if any(iv.modulus != m for iv in ivs):
        raise DomainError("modulus mismatch")
    k = len(ivs)
    mid = (k + 1) // 2
    orders = [
        sorted(h, key=lambda i: (ivs[i].length, i))
        for h in (list(range(mid)), list(range(mid, k)))
        if h
    ]

    if not with_witness:
        halves = []
        for order in orders:
            acc = ivs[order[0]].to_set()
            for i in order[1:]:
                acc = product_set(acc, ivs[i].to_set())
            halves.append(acc)
        total = halves[0] if len(halves) == 1 else product_set(halves[0], halves[1])
        return WitnessedSet(total, None)

    half_dicts = []
    for order in orders:
        acc = {int(x): (int(x),) for x in ivs[order[0]].members()}
        for i in order[1:]:
            nxt = {int(x): (int(x),) for x in ivs[i].members()}
            acc = _combine_witnessed(m, acc, nxt)
        half_dicts.append(acc)
    joined = half_dicts[0] if len(half_dicts) == 1 else _combine_witnessed(m, *half_dicts)

    slot_order = [i for order in orders for i in order]
    if slot_order != list(range(k)):
        pos = [0] * k
        for slot, orig in enumerate(slot_order):
            pos[orig] = slot
        joined = {r: tuple(w[pos[i]] for i in range(k)) for r, w in joined.items()}
    return WitnessedSet(ResidueSet.from_members(m, joined), joined)


class CoverageResult(NamedTuple):
    hypothesis_met: bool
    covers: bool
    missing: list[int]


def coverage_check(
    a: ResidueSet, b: ResidueSet, c: ResidueSet, d: ResidueSet, p: int
) -> CoverageResult:
    """Decide whether AB + CD covers every unit mod p, and whether the
    size hypothesis |A||B||C||D| > p^3 held for this instance."""
    if not is_prime(p):
        raise DomainError("p must be prime")
    for s in (a, b, c, d):
        if s.modulus != p:
            raise DomainError("modulus mismatch")
        if s.contains_zero:
            raise DomainError("sets must avoid 0 (subsets of the unit group)")
    hypothesis = a.cardinality * b.cardinality * c.cardinality * d.cardinality > p**3
    sums = sum_set(product_set(a, b), product_set(c, d))
    missing = [int(x) + 1 for x in np.nonzero(~sums.mask[1:])[0]]
    return CoverageResult(hypothesis, not missing, missing)


class TripleProductStats(NamedTuple):
    cardinality: int
    ratio: Fraction


def triple_product_stats(
    i1: Interval, i2: Interval, i3: Interval, p: int
) -> TripleProductStats:
    """Exact size of a three-interval product set, with the ratio to the
    length product (a diagnostic; no bound is asserted)."""
    if not is_prime(p):
        raise DomainError("p must be prime")
    for iv in (i1, i2, i3):
        if iv.modulus != p:
            raise DomainError("modulus mismatch")
        if iv.contains_zero:
            raise DomainError("intervals must avoid 0")
    card = iterated_interval_product([i1, i2, i3]).cardinality
    return TripleProductStats(card, Fraction(card, len(i1) * len(i2) * len(i3)))
