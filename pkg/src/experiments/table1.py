import logging
import time
from collections import Counter
from typing import Iterable, List, Optional

from src.combinatorics.dihedral import canonical_partition
from src.config import Settings, get_settings
from src.core import OrderedPartition, RingSize
from src.core.errors import VerificationError
from src.experiments import ExperimentReport, SizeProfile
from src.experiments.enumeration import (
    enumerate_partitions,
    multinomial,
    profile_for_n,
    sample_partitions,
)
from src.experiments.worker import ProgressCallback, ScanWorker

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"

CSV_HEADER = ["N", "sizes", "equivalent", "pseudo_only", "homometric_only", "total_homometric"]


def default_mode(n: int) -> str:
    """Exhaustive for N = 6, 7; sampled (300 partitions by default) beyond."""
    return EXHAUSTIVE if n <= 7 else SAMPLED


def orbit_equivalent_pairs(partitions: Iterable[OrderedPartition]) -> int:
    """Sum over dihedral orbits of C(orbit size, 2), counted independently of the scan."""
    sizes = Counter(canonical_partition(p) for p in partitions)
    return sum(c * (c - 1) // 2 for c in sizes.values())


def run_table1(ring: RingSize,
               profile: Optional[SizeProfile] = None,
               mode: str = EXHAUSTIVE,
               count: Optional[int] = None,
               seed: Optional[int] = None,
               workers: Optional[int] = None,
               settings: Optional[Settings] = None,
               progress_callback: Optional[ProgressCallback] = None) -> ExperimentReport:
    settings = settings or get_settings()
    profile = profile or profile_for_n(ring.n)
    start_time = time.perf_counter()
    population = multinomial(profile.sizes)

    if mode == EXHAUSTIVE:
        partitions = list(enumerate_partitions(ring, profile, budget=settings.enumeration_budget))
        count, seed = None, None
    elif mode == SAMPLED:
        count = settings.sample_size if count is None else count
        seed = settings.seed if seed is None else seed
        partitions = sample_partitions(ring, profile, count, seed)
    else:
        raise ValueError(f"Unknown mode {mode!r}; expected {EXHAUSTIVE!r} or {SAMPLED!r}")

    worker = ScanWorker(
        partitions,
        workers=settings.resolved_workers(workers),
        crosscheck_stride=settings.crosscheck_stride,
        progress_callback=progress_callback,
    )
    counters = worker.run()
    oracle = orbit_equivalent_pairs(partitions)
    if oracle != counters.equivalent:
        raise VerificationError(f"Scan found {counters.equivalent} equivalent pairs, orbit count gives {oracle}")
    elapsed_ms = int((time.perf_counter() - start_time) * 1000)

    report = ExperimentReport(
        n=ring.n,
        profile=profile,
        population=population,
        sampled=mode == SAMPLED,
        sample_size=count,
        seed=seed,
        pairs_checked=counters.pairs_checked,
        equivalent_pairs=counters.equivalent,
        pseudo_only_pairs=counters.pseudo_only,
        homometric_only_pairs=counters.homometric_only,
        orbit_oracle_pairs=oracle,
        elapsed_ms=elapsed_ms,
    )
    logger.info("N=%d %s: %d equivalent, %d pseudo-only, %d homometric-only "
                "(%d of %d pairs shared a fingerprint, %d cross-checked) in %d ms",
                ring.n, profile, report.equivalent_pairs, report.pseudo_only_pairs,
                report.homometric_only_pairs, counters.candidate_pairs, counters.pairs_checked,
                counters.crosschecked, elapsed_ms)
    return report


def report_to_csv_row(report: ExperimentReport) -> List:
    return [
        report.n,
        str(report.profile),
        report.equivalent_pairs,
        report.pseudo_only_pairs,
        report.homometric_only_pairs,
        report.total_homometric,
    ]
