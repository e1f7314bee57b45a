"""Bucketed pair scan over a population of ordered partitions.

Every partition is described once: its self-difference fingerprint, full
homometry key, per-block canonical subsets and orbit key. Homometric pairs share
a fingerprint, so only pairs inside a fingerprint bucket are compared. Buckets
are cut into contiguous ranges, one range per task; every task owns its
counters and the results are summed, so counts do not depend on the number of
workers.
"""
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Callable, List, Optional, Sequence, Tuple

from src.combinatorics.diffsets import homometry_key, self_fingerprint
from src.combinatorics.dihedral import canonical_mask, canonical_partition
from src.core import OrderedPartition, RingSize
from src.core.errors import ScanCancelled, VerificationError
from src.spectral.forms import autocorr_form, forms_equal

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[float, str], None]

TASKS_PER_WORKER = 4


@dataclass(frozen=True)
class PartitionRecord:
    index: int
    masks: Tuple[int, ...]
    fingerprint: Tuple[Tuple[int, ...], ...]
    homometry: Tuple[Tuple[int, ...], ...]
    block_orbits: Tuple[int, ...]
    orbit: Tuple[int, ...]


@dataclass
class ScanCounters:
    pairs_checked: int = 0
    candidate_pairs: int = 0
    equivalent: int = 0
    pseudo_only: int = 0
    homometric_only: int = 0
    crosschecked: int = 0

    def __add__(self, other: "ScanCounters") -> "ScanCounters":
        return ScanCounters(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    @property
    def total_homometric(self) -> int:
        return self.equivalent + self.pseudo_only + self.homometric_only


def describe(index: int, partition: OrderedPartition) -> PartitionRecord:
    n = partition.ring.n
    return PartitionRecord(
        index=index,
        masks=partition.masks,
        fingerprint=self_fingerprint(partition),
        homometry=homometry_key(partition),
        block_orbits=tuple(canonical_mask(n, m) for m in partition.masks),
        orbit=canonical_partition(partition),
    )


def _describe_chunk(n: int, chunk: Sequence[Tuple[int, Tuple[int, ...]]]) -> List[PartitionRecord]:
    ring = RingSize(n)
    return [describe(index, OrderedPartition.from_masks(ring, masks)) for index, masks in chunk]


def _crosscheck(n: int, first: PartitionRecord, second: PartitionRecord) -> None:
    ring = RingSize(n)
    P = OrderedPartition.from_masks(ring, first.masks)
    Q = OrderedPartition.from_masks(ring, second.masks)
    if not forms_equal(autocorr_form(P), autocorr_form(Q)):
        raise VerificationError(f"Homometric pair {P} / {Q} has different autocorrelation forms")


def _scan_buckets(n: int, population: int, stride: int,
                  buckets: Sequence[Sequence[PartitionRecord]]) -> ScanCounters:
    counters = ScanCounters()
    for bucket in buckets:
        for a in range(len(bucket)):
            first = bucket[a]
            for second in bucket[a + 1:]:
                counters.candidate_pairs += 1
                if first.homometry != second.homometry:
                    continue
                if first.orbit == second.orbit:
                    counters.equivalent += 1
                elif first.block_orbits == second.block_orbits:
                    counters.pseudo_only += 1
                else:
                    counters.homometric_only += 1
                if stride and (first.index * population + second.index) % stride == 0:
                    _crosscheck(n, first, second)
                    counters.crosschecked += 1
    return counters


def _split(items: Sequence, weights: Sequence[int], parts: int) -> List[List]:
    """Cut ``items`` into at most ``parts`` contiguous runs of similar total weight."""
    total = sum(weights)
    if not items:
        return []
    target = max(1, -(-total // max(1, parts)))
    runs, current, load = [], [], 0
    for item, weight in zip(items, weights):
        current.append(item)
        load += weight
        if load >= target:
            runs.append(current)
            current, load = [], 0
    if current:
        runs.append(current)
    return runs


class ScanWorker:
    def __init__(self,
                 partitions: Sequence[OrderedPartition],
                 workers: int = 1,
                 crosscheck_stride: int = 100,
                 progress_callback: Optional[ProgressCallback] = None):
        self.partitions = list(partitions)
        self.ring = self.partitions[0].ring if self.partitions else None
        self.workers = max(1, workers)
        self.crosscheck_stride = crosscheck_stride
        self.progress_callback = progress_callback
        self.records: List[PartitionRecord] = []
        self._stop_requested = False

    def stop(self):
        self._stop_requested = True
        logger.debug("Stop requested for scan.")

    def _progress(self, progress: float, status: str):
        if self.progress_callback:
            self.progress_callback(progress, status)

    def _check_stop(self):
        if self._stop_requested:
            self._progress(100, "Cancelled")
            raise ScanCancelled("Scan cancelled by user.")

    def _map(self, executor: Optional[ProcessPoolExecutor], fn, tasks: Sequence[tuple],
             start: float, span: float, status: str) -> list:
        results = []
        if executor is None:
            for done, task in enumerate(tasks, 1):
                self._check_stop()
                results.append(fn(*task))
                self._progress(start + span * done / len(tasks), status)
            return results
        futures = [executor.submit(fn, *task) for task in tasks]
        try:
            for done, future in enumerate(futures, 1):
                self._check_stop()
                results.append(future.result())
                self._progress(start + span * done / len(futures), status)
        except BaseException:
            for future in futures:
                future.cancel()
            raise
        return results

    def run(self) -> ScanCounters:
        population = len(self.partitions)
        if population == 0:
            return ScanCounters()
        n = self.ring.n
        tasks_wanted = self.workers * TASKS_PER_WORKER
        executor = ProcessPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        try:
            self._progress(0, "Describing partitions...")
            items = [(i, p.masks) for i, p in enumerate(self.partitions)]
            chunk = max(1, -(-population // tasks_wanted))
            described = self._map(executor, _describe_chunk,
                                  [(n, items[i:i + chunk]) for i in range(0, population, chunk)],
                                  0, 40, "Describing partitions...")
            self.records = [record for part in described for record in part]

            self._check_stop()
            self._progress(40, "Bucketing by fingerprint...")
            by_fingerprint = defaultdict(list)
            for record in self.records:
                by_fingerprint[record.fingerprint].append(record)
            buckets = [b for b in by_fingerprint.values() if len(b) > 1]
            buckets.sort(key=lambda b: b[0].index)
            logger.debug("%d partitions fall into %d shared fingerprint buckets", population, len(buckets))

            weights = [len(b) * (len(b) - 1) // 2 for b in buckets]
            runs = _split(buckets, weights, tasks_wanted)
            partial = self._map(executor, _scan_buckets,
                                [(n, population, self.crosscheck_stride, run) for run in runs],
                                40, 60, "Scanning pairs...")
        finally:
            if executor is not None:
                executor.shutdown(wait=True, cancel_futures=True)

        counters = sum(partial, ScanCounters())
        counters.pairs_checked = population * (population - 1) // 2
        self._progress(100, "Done!")
        return counters
