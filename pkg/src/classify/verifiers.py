"""Machine checks of the homometry theorems at small N.

Each verifier reduces "for all pairs, X iff Y" to grouping: X and Y are both
equalities of some per-object key, so the statement holds exactly when the two
keys induce the same classes. Grouping visits every object once instead of
every pair, and a disagreement yields a concrete counterexample pair.
"""
import itertools
import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from src.classify import PairTaxonomy, VerificationReport
from src.classify.homometry import classify_pair
from src.combinatorics.diffsets import complement, homometry_key, self_mult
from src.combinatorics.dihedral import canonical_mask, canonical_partition
from src.config import Settings, get_settings
from src.core import OrderedPartition, RingSize, SubsetMask
from src.core.codec import encode_partition
from src.core.errors import ArityMismatchError, BudgetExceededError, HomometryError, require_same_ring
from src.experiments.enumeration import check_budget, enumerate_labelings, ordered_splits
from src.spectral.autocorrelation import numeric_collision_check, random_alphabet
from src.spectral.forms import autocorr_form, sparse_view

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[float, str], None]

PATTERSON_SAMPLED = "sampled"
PATTERSON_EXHAUSTIVE = "exhaustive"


def _elapsed_ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _pairs(m: int) -> int:
    return m * (m - 1) // 2


def _disagreements(items: Sequence, key_a: Callable, key_b: Callable, limit: int = 10) -> List[Tuple]:
    """Pairs (x, y, which) where key_a agrees but key_b does not, or the reverse."""
    found = []
    for primary, secondary, label in ((key_a, key_b, "first"), (key_b, key_a, "second")):
        groups: Dict[Hashable, Dict[Hashable, object]] = defaultdict(dict)
        for item in items:
            groups[primary(item)].setdefault(secondary(item), item)
        for members in groups.values():
            if len(members) > 1:
                first, second = list(members.values())[:2]
                found.append((first, second, label))
                if len(found) >= limit:
                    return found
    return found


def _homometric_pair_count(items: Sequence, key: Callable) -> int:
    counts: Dict[Hashable, int] = defaultdict(int)
    for item in items:
        counts[key(item)] += 1
    return sum(_pairs(c) for c in counts.values())


def verify_patterson(ring: RingSize,
                     mode: str = PATTERSON_EXHAUSTIVE,
                     count: int = 10_000,
                     seed: Optional[int] = None,
                     settings: Optional[Settings] = None,
                     progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """Two subsets are homometric iff their complements are."""
    settings = settings or get_settings()
    start = time.perf_counter()
    n, full = ring.n, ring.full_mask
    report = VerificationReport("patterson", n)

    if mode == PATTERSON_EXHAUSTIVE:
        if n > settings.patterson_exhaustive_max_n:
            raise BudgetExceededError(
                f"Exhaustive Patterson check is limited to N <= {settings.patterson_exhaustive_max_n}, got N={n}"
            )
        masks = range(1 << n)
        if progress_callback:
            progress_callback(10, f"Fingerprinting {1 << n} subsets...")
        found = _disagreements(masks, lambda m: self_mult(n, m), lambda m: self_mult(n, full ^ m))
        report.checked = _pairs(1 << n)
        homometric = _homometric_pair_count(masks, lambda m: self_mult(n, m))
        equivalent = _homometric_pair_count(masks, lambda m: canonical_mask(n, m))
        report.details = {
            "homometric_pairs": homometric,
            "equivalent_pairs": equivalent,
            "non_equivalent_homometric_pairs": homometric - equivalent,
        }
        for a, b, side in found:
            report.violations.append({
                "a": list(SubsetMask(ring, a).indices()),
                "b": list(SubsetMask(ring, b).indices()),
                "direction": "sets homometric, complements not" if side == "first"
                else "complements homometric, sets not",
            })
    elif mode == PATTERSON_SAMPLED:
        seed = settings.seed if seed is None else seed
        rng = np.random.default_rng(seed)
        for _ in range(count):
            size = int(rng.integers(0, n + 1))
            a = sum(1 << int(i) for i in rng.choice(n, size=size, replace=False))
            b = sum(1 << int(i) for i in rng.choice(n, size=size, replace=False))
            forward = self_mult(n, a) == self_mult(n, b)
            backward = self_mult(n, full ^ a) == self_mult(n, full ^ b)
            if forward != backward:
                report.violations.append({
                    "a": list(SubsetMask(ring, a).indices()),
                    "b": list(SubsetMask(ring, b).indices()),
                    "direction": "sets homometric, complements not" if forward
                    else "complements homometric, sets not",
                })
        report.checked = count
        report.details = {"seed": seed}
    else:
        raise HomometryError(f"Unknown mode {mode!r}")

    report.elapsed_ms = _elapsed_ms(start)
    if progress_callback:
        progress_callback(100, "Done!")
    return report


@dataclass(frozen=True)
class _TwoLetterRecord:
    partition: OrderedPartition
    form: bytes
    first: Tuple[int, ...]
    second: Tuple[int, ...]
    full: Tuple[Tuple[int, ...], ...]


def verify_two_alphabet_theorem(ring: RingSize,
                                trials: int = 1000,
                                seed: Optional[int] = None,
                                settings: Optional[Settings] = None,
                                progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """For two letters: equal forms, homometric S_alpha, homometric S_beta and
    homometric partitions are the same relation. Random alphabets then confirm
    that numeric equality agrees with the exact forms.
    """
    settings = settings or get_settings()
    if ring.n > settings.two_alphabet_max_n:
        raise BudgetExceededError(
            f"Two-letter sweep is limited to N <= {settings.two_alphabet_max_n}, got N={ring.n}"
        )
    if ring.n < 2:
        raise ArityMismatchError("Two nonempty blocks need N >= 2")
    start = time.perf_counter()
    n, full = ring.n, ring.full_mask
    report = VerificationReport("two-alphabet", n)

    records = []
    for mask in range(1, full):
        P = OrderedPartition.from_masks(ring, (mask, full ^ mask))
        records.append(_TwoLetterRecord(P, autocorr_form(P).key(), self_mult(n, mask),
                                        self_mult(n, full ^ mask), homometry_key(P)))
    if progress_callback:
        progress_callback(50, f"Comparing {len(records)} two-block partitions...")

    conditions = {
        "(i) equal autocorrelation forms": lambda r: r.form,
        "(ii) S_alpha homometric": lambda r: r.first,
        "(iii) S_beta homometric": lambda r: r.second,
    }
    full_key = lambda r: r.full
    for label, key in conditions.items():
        for x, y, _ in _disagreements(records, key, full_key):
            report.violations.append({
                "condition": f"{label} vs (iv) homometric partitions",
                "p": encode_partition(x.partition),
                "q": encode_partition(y.partition),
            })

    seed = settings.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = (records[int(i)] for i in rng.choice(len(records), size=2, replace=False))
        alphabet = random_alphabet(2, rng)
        exact = x.form == y.form
        if numeric_collision_check(x.partition, y.partition, alphabet, settings.tolerance) != exact:
            report.violations.append({
                "condition": "numeric autocorrelation vs exact forms",
                "p": encode_partition(x.partition),
                "q": encode_partition(y.partition),
                "alphabet": list(alphabet.letters),
            })

    pairs = _pairs(len(records))
    report.checked = 3 * pairs + trials
    report.details = {
        "partitions": len(records),
        "pairs": pairs,
        "equivalences_checked": 3 * pairs,
        "homometric_pairs": _homometric_pair_count(records, full_key),
        "numeric_trials": trials,
        "seed": seed,
    }
    report.elapsed_ms = _elapsed_ms(start)
    if progress_callback:
        progress_callback(100, "Done!")
    return report


def _form_sweep(name: str, ring: RingSize, k: int, key_a: Callable, key_b: Callable, budget: int,
                progress_callback: Optional[ProgressCallback]) -> VerificationReport:
    if not 1 <= k <= ring.n:
        raise ArityMismatchError(f"K nonempty blocks need 1 <= K <= N, got K={k}, N={ring.n}")
    start = time.perf_counter()
    report = VerificationReport(name, ring.n)
    partitions = list(enumerate_labelings(ring, k, budget=budget))
    if progress_callback:
        progress_callback(30, f"Computing forms for {len(partitions)} partitions...")
    records = [(P, autocorr_form(P)) for P in partitions]
    for x, y, side in _disagreements(records, key_a, key_b):
        report.violations.append({
            "p": encode_partition(x[0]),
            "q": encode_partition(y[0]),
            "agreeing": "first" if side == "first" else "second",
        })
    report.checked = _pairs(len(records))
    report.details = {"k": k, "partitions": len(records),
                      "classes": len({key_b(r) for r in records})}
    report.elapsed_ms = _elapsed_ms(start)
    if progress_callback:
        progress_callback(100, "Done!")
    return report


def verify_sparse_theorem(ring: RingSize, k: int = 3,
                          settings: Optional[Settings] = None,
                          progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """Setting the first letter to zero loses no information: sparse forms agree iff full forms agree."""
    settings = settings or get_settings()
    if k < 2:
        raise ArityMismatchError("A sparse alphabet needs at least one nonzero letter (K >= 2)")
    return _form_sweep("sparse", ring, k,
                       lambda r: sparse_view(r[1]).tobytes(), lambda r: r[1].key(),
                       settings.enumeration_budget, progress_callback)


def verify_form_homometry(ring: RingSize, k: int = 3,
                          settings: Optional[Settings] = None,
                          progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """Generic alphabets: equal forms iff homometric partitions."""
    settings = settings or get_settings()
    return _form_sweep("forms", ring, k,
                       lambda r: r[1].key(), lambda r: homometry_key(r[0]),
                       settings.enumeration_budget, progress_callback)


def singleton_partitions(ring: RingSize, k: int, budget: Optional[int] = None):
    """Partitions (rest, {a_1}, ..., {a_k}) for every ordered k-tuple of distinct indices."""
    if not 1 <= k < ring.n:
        raise ArityMismatchError(f"Need 1 <= K < N, got K={k}, N={ring.n}")
    check_budget(ring.n ** k, budget, f"Singleton tuples N={ring.n}, K={k}")
    full = ring.full_mask
    for points in itertools.permutations(range(ring.n), k):
        singles = tuple(1 << p for p in points)
        yield OrderedPartition.from_masks(ring, (full ^ sum(singles),) + singles)


def verify_singletons_proposition(ring: RingSize, k: int,
                                  settings: Optional[Settings] = None,
                                  progress_callback: Optional[ProgressCallback] = None) -> VerificationReport:
    """Partitions of shape (N-K, 1, ..., 1) are homometric iff equivalent."""
    settings = settings or get_settings()
    start = time.perf_counter()
    report = VerificationReport("singletons", ring.n)
    partitions = list(singleton_partitions(ring, k, budget=settings.enumeration_budget))
    if progress_callback:
        progress_callback(30, f"Comparing {len(partitions)} partitions...")
    for x, y, side in _disagreements(partitions, homometry_key, canonical_partition):
        report.violations.append({
            "p": encode_partition(x),
            "q": encode_partition(y),
            "direction": "homometric, not equivalent" if side == "first" else "equivalent, not homometric",
        })
    report.checked = _pairs(len(partitions))
    report.details = {"k": k, "partitions": len(partitions),
                      "homometric_pairs": _homometric_pair_count(partitions, homometry_key)}
    report.elapsed_ms = _elapsed_ms(start)
    if progress_callback:
        progress_callback(100, "Done!")
    return report


@dataclass(frozen=True)
class RefinementMatch:
    p: OrderedPartition
    q: OrderedPartition
    taxonomy: PairTaxonomy


def survey_refinements(A: SubsetMask, A_prime: SubsetMask, parts: int) -> List[RefinementMatch]:
    """Homometric pairs (A, B_1..B_parts) vs (A', B'_1..B'_parts), the B's splitting the complements."""
    require_same_ring(A, A_prime)
    ring = A.ring

    def refinements(base: SubsetMask) -> List[OrderedPartition]:
        return [OrderedPartition(ring, (base,) + split) for split in ordered_splits(complement(base), parts)]

    left = defaultdict(list)
    for P in refinements(A):
        left[homometry_key(P)].append(P)
    matches = []
    for Q in refinements(A_prime):
        for P in left.get(homometry_key(Q), []):
            matches.append(RefinementMatch(P, Q, classify_pair(P, Q)))
    logger.debug("%d homometric refinements into %d parts", len(matches), parts)
    return matches
