"""Exact solvability decision for a*x1...x6 + b*x7...x13 == c (mod p) over
interval boxes, by meet-in-the-middle set intersection.

Both sides are materialized exactly (left products scaled by a, right
products mapped through v -> c - b*v), so a negative answer is a proof of
unsolvability, not a search failure. Small-p failures are expected data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .arith import floor_power, is_prime
from .errors import DomainError
from .residues import Interval, iterated_interval_product
from .rng import stream

LEFT_ARITY = 6
RIGHT_ARITY = 7
_FAILURE_SAMPLE_CAP = 20


@dataclass(frozen=True)
class SolveInstance:
    p: int
    a: int
    b: int
    c: int
    left: tuple[Interval, ...]
    right: tuple[Interval, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError("modulus must be prime")
        for name in ("a", "b", "c"):
            value = getattr(self, name) % self.p
            if value == 0:
                raise DomainError(f"{name} must be nonzero mod p")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        if len(self.left) != LEFT_ARITY or len(self.right) != RIGHT_ARITY:
            raise DomainError(
                f"need {LEFT_ARITY} left intervals and {RIGHT_ARITY} right intervals"
            )
        for iv in self.left + self.right:
            if iv.modulus != self.p:
                raise DomainError("interval modulus mismatch")
            if iv.contains_zero:
                raise DomainError("intervals must avoid 0 mod p")

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self.left + self.right

    @property
    def box(self) -> int:
        return prod(len(iv) for iv in self.intervals)


@dataclass(frozen=True)
class SolveReport:
    instance: SolveInstance
    solvable: bool
    witness: Optional[tuple[int, ...]]
    left_card: int
    right_card: int


def solve(instance: SolveInstance) -> SolveReport:
    """Decide c in a*(I1...I6) + b*(I7...I13) exactly, with a witness tuple.

    The smallest common residue of the two transformed sets is taken, so the
    returned witness is deterministic.
    """
    p = instance.p
    prod_l = iterated_interval_product(instance.left, with_witness=True)
    prod_r = iterated_interval_product(instance.right, with_witness=True)

    left_mask = np.zeros(p, dtype=bool)
    scaled_l = (instance.a * prod_l.members) % p
    left_mask[scaled_l] = True
    right_mask = np.zeros(p, dtype=bool)
    mapped_r = (instance.c - instance.b * prod_r.members) % p
    right_mask[mapped_r] = True

    common = np.nonzero(left_mask & right_mask)[0]
    if common.size == 0:
        return SolveReport(instance, False, None, prod_l.cardinality, prod_r.cardinality)
    s = int(common[0])
    a_inv = pow(instance.a, -1, p)
    b_inv = pow(instance.b, -1, p)
    u = s * a_inv % p
    v = (instance.c - s) * b_inv % p
    witness = prod_l.witness[u] + prod_r.witness[v]
    if not verify_witness(instance, witness):
        raise AssertionError("internal witness failed verification")
    return SolveReport(instance, True, witness, prod_l.cardinality, prod_r.cardinality)


def verify_witness(instance: SolveInstance, witness: Sequence[int]) -> bool:
    """Recompute both products and check the congruence; the witness must lie
    coordinate-wise inside the instance's intervals."""
    witness = tuple(int(x) for x in witness)
    if len(witness) != LEFT_ARITY + RIGHT_ARITY:
        raise DomainError("witness must have 13 coordinates")
    for x, iv in zip(witness, instance.intervals):
        if x not in iv:
            raise DomainError(f"witness coordinate {x} outside its interval")
    p = instance.p
    u = prod(witness[:LEFT_ARITY]) % p
    v = prod(witness[LEFT_ARITY:]) % p
    return (instance.a * u + instance.b * v) % p == instance.c


def solve_anchored(instance: SolveInstance) -> SolveReport:
    """Same exact decision as solve, for instances whose last right interval
    contains 1 (so that interval may stay very short)."""
    if 1 not in instance.right[-1]:
        raise DomainError("last right interval must contain 1")
    return solve(instance)


def twelve_interval_instance(
    p: int, a: int, b: int, c: int, base_len: int, eps: float
) -> SolveInstance:
    """A 13-interval instance realizing a 12-interval configuration: eleven
    intervals of base_len plus a split last interval {1..floor(p**(1/4+eps/2))}
    and {1..floor(p**(eps/2))}, all anchored at 1."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    n12 = min(max(floor_power(p, 0.25 + eps / 2), 1), p - 1)
    n13 = min(max(floor_power(p, eps / 2), 1), p - 1)
    base = Interval(0, base_len, p)
    left = (base,) * LEFT_ARITY
    right = (base,) * 5 + (Interval(0, n12, p), Interval(0, n13, p))
    return SolveInstance(p, a, b, c, left, right)


class ScanRow(NamedTuple):
    length: int
    total: int
    solvable: int
    fraction: float


@dataclass(frozen=True)
class ScanResult:
    p: int
    lengths: tuple[int, ...]
    sampled: bool
    total: int
    solvable: int
    fraction: float
    failures: tuple[tuple[int, int, int], ...]
    failure_count: int


def abc_scan(
    p: int,
    lengths: Sequence[int],
    sample: Optional[int] = None,
    seed: int = 0,
) -> ScanResult:
    """Solvable fraction over coefficient triples with intervals {1..len_j}.

    a is fixed to 1: solvability of (a, b, c) equals that of
    (1, b*a^-1, c*a^-1) with the same witness, so the (b, c) grid covers all
    triples. Without `sample` the full grid is enumerated; with it, `sample`
    seeded pairs are drawn (duplicates allowed). Failures are recorded as
    (1, b, c) triples, capped at 20 with the full count alongside.
    """
    if not is_prime(p):
        raise DomainError("modulus must be prime")
    lengths = tuple(int(n) for n in lengths)
    if len(lengths) != LEFT_ARITY + RIGHT_ARITY:
        raise DomainError("need 13 interval lengths")
    if any(not 1 <= n <= p - 1 for n in lengths):
        raise DomainError("lengths must satisfy 1 <= len < p")
    intervals = [Interval(0, n, p) for n in lengths]
    prod_l = iterated_interval_product(intervals[:LEFT_ARITY]).base
    prod_r = iterated_interval_product(intervals[LEFT_ARITY:]).base
    l_members = prod_l.members
    r_members = prod_r.members

    failures: list[tuple[int, int, int]] = []
    failure_count = 0
    solvable = 0
    if sample is None:
        total = (p - 1) ** 2
        for b in range(1, p):
            sums = np.zeros(p, dtype=bool)
            table = (l_members[:, None] + (b * r_members % p)[None, :]) % p
            sums[table.reshape(-1)] = True
            ok = sums[1:]
            solvable += int(ok.sum())
            if not ok.all():
                for c in (np.nonzero(~ok)[0] + 1).tolist():
                    failure_count += 1
                    if len(failures) < _FAILURE_SAMPLE_CAP:
                        failures.append((1, b, int(c)))
    else:
        if sample < 1:
            raise DomainError("sample must be >= 1")
        total = sample
        gen = stream(seed, f"abc-scan-p{p}")
        pairs = gen.integers(1, p, size=(sample, 2))
        left_mask = prod_l.mask
        hits = []
        for b, c in pairs.tolist():
            hit = bool(left_mask[(c - b * r_members) % p].any())
            solvable += hit
            if not hit:
                hits.append((1, int(b), int(c)))
        failure_count = len(hits)
        failures = sorted(set(hits))[:_FAILURE_SAMPLE_CAP]
    return ScanResult(
        p=p,
        lengths=lengths,
        sampled=sample is not None,
        total=total,
        solvable=solvable,
        fraction=solvable / total,
        failures=tuple(failures),
        failure_count=failure_count,
    )


@dataclass(frozen=True)
class ThresholdResult:
    p: int
    minimal_len: Optional[int]
    curve: tuple[ScanRow, ...]


def threshold_scan(p: int, max_len: Optional[int] = None) -> ThresholdResult:
    """Smallest uniform interval length whose full coefficient scan is 100%
    solvable, with the whole solvable-fraction curve up to that point.

    No monotonicity is assumed: lengths ascend from 1 and the first fully
    solvable one wins. Length p-1 always succeeds for p >= 3 (for p = 2 no
    length works and minimal_len is None).
    """
    if not is_prime(p):
        raise DomainError("modulus must be prime")
    if max_len is None:
        max_len = p - 1
    max_len = min(max_len, p - 1)
    curve = []
    minimal = None
    for n in range(1, max_len + 1):
        res = abc_scan(p, [n] * (LEFT_ARITY + RIGHT_ARITY))
        curve.append(ScanRow(n, res.total, res.solvable, res.fraction))
        if res.solvable == res.total:
            minimal = n
            break
    return ThresholdResult(p, minimal, tuple(curve))
