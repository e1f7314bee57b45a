"""Cyclic distances and difference multisets.

A difference multiset holds *folded* cyclic distances d in [0, floor(N/2)].
Directed lag counts (v - u mod N) are the raw material; ``fold`` turns them into
distances.
"""
from functools import lru_cache
from typing import Iterable, Optional, Tuple

import numpy as np

from src.core import DistanceMultiset, OrderedPartition, RingSize, SubsetMask
from src.core.errors import EmptySetError, RingMismatchError, require_same_ring


def cyclic_distance(ring: RingSize, i: int, j: int) -> int:
    ring.check_index(i)
    ring.check_index(j)
    gap = abs(i - j)
    return min(ring.n - gap, gap)


def _indices(n: int, bits: int) -> np.ndarray:
    return np.flatnonzero([(bits >> i) & 1 for i in range(n)])


@lru_cache(maxsize=1 << 16)
def _directed(n: int, a: int, b: int) -> Tuple[int, ...]:
    ia, ib = _indices(n, a), _indices(n, b)
    lags = (ib[np.newaxis, :] - ia[:, np.newaxis]) % n
    return tuple(np.bincount(lags.ravel(), minlength=n).tolist())


def _fold(n: int, counts: Tuple[int, ...], self_difference: bool) -> Tuple[int, ...]:
    half = n // 2
    mult = [counts[0]]
    for d in range(1, half + 1):
        m = counts[d] if 2 * d == n else counts[d] + counts[n - d]
        mult.append(m // 2 if self_difference else m)
    return tuple(mult)


@lru_cache(maxsize=1 << 16)
def self_mult(n: int, bits: int) -> Tuple[int, ...]:
    """Multiplicity tuple of A - A for the mask ``bits``; cached per process."""
    return _fold(n, _directed(n, bits, bits), True)


@lru_cache(maxsize=1 << 18)
def cross_mult(n: int, a: int, b: int) -> Tuple[int, ...]:
    return _fold(n, _directed(n, a, b), False)


def directed_counts(A: SubsetMask, B: SubsetMask) -> np.ndarray:
    """c[l] = #{(u, v) in A x B : v - u = l mod N}."""
    require_same_ring(A, B)
    return np.asarray(_directed(A.ring.n, A.bits, B.bits), dtype=np.int64)


def fold(counts: Iterable[int], ring: RingSize, self_difference: bool = False) -> DistanceMultiset:
    """Fold directed lag counts into cyclic distances.

    h[d] = c[d] + c[N - d] for 0 < d < N/2, h[0] = c[0], h[N/2] = c[N/2].
    For a self difference every pair at a positive distance is seen in both
    directions, so those entries are halved.
    """
    counts = tuple(int(c) for c in counts)
    if len(counts) != ring.n:
        raise ValueError(f"Expected {ring.n} lag counts, got {len(counts)}")
    return DistanceMultiset(ring, _fold(ring.n, counts, self_difference))


def self_difference(A: SubsetMask) -> DistanceMultiset:
    if A.is_empty():
        raise EmptySetError("Self difference of an empty set is undefined")
    return DistanceMultiset(A.ring, self_mult(A.ring.n, A.bits))


def cross_difference(A: SubsetMask, B: SubsetMask) -> DistanceMultiset:
    require_same_ring(A, B)
    if A.is_empty() or B.is_empty():
        raise EmptySetError("Cross difference needs two nonempty sets")
    return DistanceMultiset(A.ring, cross_mult(A.ring.n, A.bits, B.bits))


def multiset_sum(multisets: Iterable[DistanceMultiset], ring: Optional[RingSize] = None) -> DistanceMultiset:
    multisets = list(multisets)
    if ring is None:
        if not multisets:
            raise ValueError("An empty sum needs an explicit ring")
        ring = multisets[0].ring
    total = DistanceMultiset.zero(ring)
    for ms in multisets:
        if ms.ring != ring:
            raise RingMismatchError(f"Cannot sum a multiset over N={ms.ring.n} into N={ring.n}")
        total = total + ms
    return total


def complement(A: SubsetMask) -> SubsetMask:
    return SubsetMask(A.ring, A.ring.full_mask & ~A.bits)


def self_fingerprint(P: OrderedPartition) -> Tuple[Tuple[int, ...], ...]:
    """The K self-difference multisets of a partition, in block order."""
    n = P.ring.n
    return tuple(self_mult(n, m) for m in P.masks)


def homometry_key(P: OrderedPartition) -> Tuple[Tuple[int, ...], ...]:
    """All A_i - A_j for i <= j, row-major. Equal keys mean homometric partitions."""
    n = P.ring.n
    masks = P.masks
    key = []
    for i, a in enumerate(masks):
        key.append(self_mult(n, a))
        for b in masks[i + 1:]:
            key.append(cross_mult(n, a, b))
    return tuple(key)
