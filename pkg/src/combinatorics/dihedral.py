"""The action of the dihedral group D_2N on indices, subsets and ordered partitions.

An element is stored as (reflect, shift) and acts as i -> (+/- i) + shift mod N:
the reflection s(i) = N - i is applied first, then the rotation r^shift.
Elements are always listed in (reflect, shift) order, so the first match of a
search is the minimal witness.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from src.core import DihedralElement, OrderedPartition, RingSize, SubsetMask
from src.core.errors import RingMismatchError, require_same_ring


@dataclass(frozen=True)
class Witness:
    """Outcome of an equivalence test; truthy when it holds."""
    holds: bool
    elements: Tuple[DihedralElement, ...] = ()

    def __bool__(self):
        return self.holds

    def __str__(self):
        if not self.holds:
            return "none"
        return ", ".join(str(g) for g in self.elements)


def identity() -> DihedralElement:
    return DihedralElement(False, 0)


def rotation(ring: RingSize, k: int = 1) -> DihedralElement:
    return DihedralElement(False, k % ring.n)


def reflection() -> DihedralElement:
    return DihedralElement(True, 0)


def elements(ring: RingSize) -> Tuple[DihedralElement, ...]:
    return tuple(DihedralElement(reflect, shift) for reflect in (False, True) for shift in range(ring.n))


def compose(g: DihedralElement, h: DihedralElement, ring: RingSize) -> DihedralElement:
    """The element g*h, acting as i -> g(h(i))."""
    ring.check_element(g)
    ring.check_element(h)
    inner = -h.shift if g.reflect else h.shift
    return DihedralElement(g.reflect != h.reflect, (inner + g.shift) % ring.n)


def inverse(g: DihedralElement, ring: RingSize) -> DihedralElement:
    ring.check_element(g)
    if g.reflect:
        return DihedralElement(True, g.shift % ring.n)
    return DihedralElement(False, -g.shift % ring.n)


def power(g: DihedralElement, m: int, ring: RingSize) -> DihedralElement:
    result = identity()
    for _ in range(m):
        result = compose(g, result, ring)
    return result


def apply(g: DihedralElement, i: int, ring: RingSize) -> int:
    ring.check_index(i)
    ring.check_element(g)
    base = (ring.n - i) if g.reflect else i
    return (base + g.shift) % ring.n


def _reflect_bits(n: int, bits: int) -> int:
    if n == 1:
        return bits
    rest = bits >> 1
    return (bits & 1) | (int(format(rest, f"0{n - 1}b")[::-1], 2) << 1)


def _rotate_bits(n: int, bits: int, t: int) -> int:
    t %= n
    return ((bits << t) | (bits >> (n - t))) & ((1 << n) - 1)


def apply_mask(n: int, g: DihedralElement, bits: int) -> int:
    base = _reflect_bits(n, bits) if g.reflect else bits
    return _rotate_bits(n, base, g.shift)


@lru_cache(maxsize=1 << 16)
def orbit_images(n: int, bits: int) -> Tuple[int, ...]:
    """Images of a mask under all 2N elements, in (reflect, shift) order."""
    images = []
    for base in (bits, _reflect_bits(n, bits)):
        images.extend(_rotate_bits(n, base, t) for t in range(n))
    return tuple(images)


def apply_subset(g: DihedralElement, A: SubsetMask) -> SubsetMask:
    A.ring.check_element(g)
    return SubsetMask(A.ring, apply_mask(A.ring.n, g, A.bits))


def apply_partition(g: DihedralElement, P: OrderedPartition) -> OrderedPartition:
    return OrderedPartition(P.ring, tuple(apply_subset(g, b) for b in P.blocks), allow_empty=P.allow_empty)


def canonical_mask(n: int, bits: int) -> int:
    return min(orbit_images(n, bits))


def canonical_subset(A: SubsetMask) -> SubsetMask:
    """Orbit representative: the smallest image, reading bit i as weight 2**i."""
    return SubsetMask(A.ring, canonical_mask(A.ring.n, A.bits))


def canonical_partition(P: OrderedPartition) -> Tuple[int, ...]:
    """Smallest blockwise image (sigma A_1, ..., sigma A_K) over all sigma."""
    n = P.ring.n
    images = [orbit_images(n, m) for m in P.masks]
    return min(tuple(img[g] for img in images) for g in range(2 * n))


def _element_at(ring: RingSize, index: int) -> DihedralElement:
    return DihedralElement(index >= ring.n, index % ring.n)


def find_subset_map(A: SubsetMask, B: SubsetMask) -> Optional[DihedralElement]:
    """Minimal sigma with sigma A = B, or None."""
    require_same_ring(A, B)
    for index, image in enumerate(orbit_images(A.ring.n, A.bits)):
        if image == B.bits:
            return _element_at(A.ring, index)
    return None


def are_equivalent_subsets(A: SubsetMask, B: SubsetMask) -> Witness:
    g = find_subset_map(A, B)
    return Witness(g is not None, (g,) if g is not None else ())


def _check_pair(P: OrderedPartition, Q: OrderedPartition) -> bool:
    if P.ring != Q.ring:
        raise RingMismatchError(f"Partitions live on N={P.ring.n} and N={Q.ring.n}")
    return P.k == Q.k and P.sizes == Q.sizes


def are_equivalent_partitions(P: OrderedPartition, Q: OrderedPartition) -> Witness:
    """One sigma mapping every block of P onto the same-indexed block of Q."""
    if not _check_pair(P, Q):
        return Witness(False)
    n = P.ring.n
    images = [orbit_images(n, m) for m in P.masks]
    targets = Q.masks
    for index in range(2 * n):
        if all(img[index] == t for img, t in zip(images, targets)):
            return Witness(True, (_element_at(P.ring, index),))
    return Witness(False)


def are_pseudo_equivalent(P: OrderedPartition, Q: OrderedPartition) -> Witness:
    """Each block of Q is the image of its counterpart in P under its own sigma_i."""
    if not _check_pair(P, Q):
        return Witness(False)
    n = P.ring.n
    if any(canonical_mask(n, a) != canonical_mask(n, b) for a, b in zip(P.masks, Q.masks)):
        return Witness(False)
    return Witness(True, tuple(find_subset_map(a, b) for a, b in zip(P.blocks, Q.blocks)))
