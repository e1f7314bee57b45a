import logging
from typing import Optional

import numpy as np
from scipy.linalg import dft

from src.core import Alphabet, OrderedPartition, Signal
from src.core.errors import ArityMismatchError, require_same_ring

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


def autocorrelation(x: Signal) -> np.ndarray:
    """Periodic autocorrelation a[l] = sum_n x[n] x[n + l], indices mod N.

    Direct summation; the conjugate is dropped because signals are real.
    """
    v = x.array
    return np.array([v @ np.roll(v, -lag) for lag in range(x.ring.n)])


def transform(values: np.ndarray) -> np.ndarray:
    """Naive O(N^2) DFT with a dense matrix."""
    values = np.asarray(values)
    return dft(len(values)) @ values


def power_spectrum(x: Signal) -> np.ndarray:
    return np.abs(transform(x.array)) ** 2


def random_alphabet(k: int, rng: np.random.Generator, sparse: bool = False) -> Alphabet:
    """Letters drawn uniformly from (0, 1); with ``sparse`` the first letter is 0."""
    while True:
        letters = rng.uniform(0.0, 1.0, size=k)
        if sparse:
            letters[0] = 0.0
        if len(set(letters.tolist())) == k and np.count_nonzero(letters) >= k - int(sparse):
            return Alphabet(tuple(letters.tolist()))


def numeric_collision_check(P: OrderedPartition, Q: OrderedPartition, alphabet: Alphabet,
                            tol: Optional[float] = None) -> bool:
    """True when both partitions, realised over ``alphabet``, give the same autocorrelation."""
    require_same_ring(P, Q)
    if P.k != Q.k or alphabet.k != P.k:
        raise ArityMismatchError(f"Need equal arity: P has {P.k} blocks, Q has {Q.k}, alphabet has {alphabet.k}")
    tol = DEFAULT_TOLERANCE if tol is None else tol
    a = autocorrelation(Signal.from_partition(P, alphabet))
    b = autocorrelation(Signal.from_partition(Q, alphabet))
    gap = float(np.max(np.abs(a - b)))
    logger.debug("Autocorrelation gap %.3e for %s vs %s", gap, P, Q)
    return gap < tol
