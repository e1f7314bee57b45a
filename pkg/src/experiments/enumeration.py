"""Enumeration and seeded sampling of ordered partitions.

Partitions of a profile (s_1, ..., s_K) are listed block by block: block 1 runs
through ``itertools.combinations(range(N), s_1)``, block 2 through the
combinations of what is left, and so on. Ranks follow that same order, so a
sample is a set of ranks drawn without replacement and then unranked.
"""
import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from src.core import OrderedPartition, RingSize, SubsetMask
from src.core.errors import BudgetExceededError, CountExceedsPopulationError, HomometryError
from src.experiments import SizeProfile

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000

# Block sizes of the census row for each N.
TABLE_PROFILES = {
    6: (2, 2, 2),
    7: (3, 2, 2),
    8: (3, 3, 2),
    9: (3, 3, 3),
    10: (4, 3, 3),
    11: (4, 4, 3),
    12: (4, 4, 4),
    13: (5, 4, 4),
}


def multinomial(sizes: Sequence[int]) -> int:
    total, remaining = 1, sum(sizes)
    for s in sizes:
        total *= int(comb(remaining, s, exact=True))
        remaining -= s
    return total


def check_budget(count: int, budget: Optional[int], what: str) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceededError(f"{what} needs {count:,} items, budget is {budget:,}")


def profile_for_n(n: int) -> SizeProfile:
    """Near-equal three-part split, larger parts first."""
    if n in TABLE_PROFILES:
        return SizeProfile(TABLE_PROFILES[n])
    q, r = divmod(n, 3)
    return SizeProfile(tuple(s for s in [q + 1] * r + [q] * (3 - r) if s > 0))


def _check_profile(ring: RingSize, profile: SizeProfile) -> None:
    if profile.n != ring.n:
        raise HomometryError(f"Profile {profile} sums to {profile.n}, ring has N={ring.n}")


def enumerate_partitions(ring: RingSize, profile: SizeProfile,
                         budget: Optional[int] = None) -> Iterator[OrderedPartition]:
    _check_profile(ring, profile)
    check_budget(multinomial(profile.sizes), budget, f"Enumerating profile {profile}")

    def blocks_from(remaining: Tuple[int, ...], sizes: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(sizes) == 1:
            yield (sum(1 << i for i in remaining),)
            return
        for chosen in itertools.combinations(remaining, sizes[0]):
            rest = tuple(i for i in remaining if i not in chosen)
            mask = sum(1 << i for i in chosen)
            for tail in blocks_from(rest, sizes[1:]):
                yield (mask,) + tail

    for masks in blocks_from(tuple(range(ring.n)), profile.sizes):
        yield OrderedPartition.from_masks(ring, masks)


def _unrank_combination(pool: Sequence[int], k: int, rank: int) -> Tuple[int, ...]:
    chosen, start = [], 0
    for slot in range(k):
        for idx in range(start, len(pool)):
            count = int(comb(len(pool) - idx - 1, k - slot - 1, exact=True))
            if rank < count:
                chosen.append(pool[idx])
                start = idx + 1
                break
            rank -= count
    return tuple(chosen)


def unrank_partition(ring: RingSize, profile: SizeProfile, rank: int) -> OrderedPartition:
    """The partition at position ``rank`` of ``enumerate_partitions``."""
    _check_profile(ring, profile)
    remaining = list(range(ring.n))
    masks = []
    sizes = profile.sizes
    for position, size in enumerate(sizes):
        rest_count = multinomial(sizes[position + 1:])
        chosen = _unrank_combination(remaining, size, rank // rest_count)
        rank %= rest_count
        masks.append(sum(1 << i for i in chosen))
        remaining = [i for i in remaining if i not in chosen]
    return OrderedPartition.from_masks(ring, masks)


def sample_partitions(ring: RingSize, profile: SizeProfile, count: int, seed: int) -> List[OrderedPartition]:
    """Uniform sample without replacement, returned in enumeration order."""
    _check_profile(ring, profile)
    population = multinomial(profile.sizes)
    if count > population:
        raise CountExceedsPopulationError(
            f"Cannot draw {count} partitions from a population of {population} (profile {profile})"
        )
    rng = np.random.default_rng(seed)
    ranks = sorted(int(r) for r in rng.choice(population, size=count, replace=False))
    logger.debug("Sampled %d of %d partitions with seed %s", count, population, seed)
    return [unrank_partition(ring, profile, r) for r in ranks]


def enumerate_labelings(ring: RingSize, k: int, budget: Optional[int] = None) -> Iterator[OrderedPartition]:
    """Every ordered partition with exactly k nonempty blocks, any sizes."""
    check_budget(k ** ring.n, budget, f"Labelling N={ring.n} with {k} letters")
    for labels in itertools.product(range(k), repeat=ring.n):
        if len(set(labels)) == k:
            yield OrderedPartition.from_labels(ring, labels, k=k)


def ordered_splits(S: SubsetMask, parts: int) -> Iterator[Tuple[SubsetMask, ...]]:
    """Every ordered split of S into ``parts`` nonempty blocks."""
    members = S.indices()
    for labels in itertools.product(range(parts), repeat=len(members)):
        if len(set(labels)) != parts:
            continue
        masks = [0] * parts
        for member, label in zip(members, labels):
            masks[label] |= 1 << member
        yield tuple(SubsetMask(S.ring, m) for m in masks)
