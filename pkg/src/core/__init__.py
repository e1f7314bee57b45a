"""Domain types shared by every module.

All types are frozen dataclasses and safe to share between threads and worker
processes. Nothing in here does more than construct and validate; the
algorithms live in ``src.combinatorics``, ``src.spectral`` and ``src.classify``.
"""
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.errors import (
    AlphabetError,
    ArityMismatchError,
    CoverageError,
    EmptyBlockError,
    HomometryError,
    IndexOutOfRangeError,
    OverlapError,
    RingMismatchError,
)

MAX_MASK_BITS = 64

# Letters closer than this are treated as the same value when reading a signal back.
LETTER_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class RingSize:
    """The signal length N. Indices live on the ring [0, N-1]."""
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise HomometryError(f"Ring size must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def half(self) -> int:
        return self.n // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_index(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexOutOfRangeError(f"Index {i} is outside [0, {self.n - 1}]")
        return int(i)

    def check_element(self, g: "DihedralElement") -> "DihedralElement":
        if g.shift >= self.n:
            raise IndexOutOfRangeError(f"Shift {g.shift} is outside [0, {self.n - 1}] for {g}")
        return g

    def __str__(self):
        return f"N={self.n}"


def as_ring(ring: Union[RingSize, int]) -> RingSize:
    return ring if isinstance(ring, RingSize) else RingSize(ring)


@dataclass(frozen=True)
class SubsetMask:
    """A subset of [0, N-1] stored as a bit-vector: bit i set iff i is a member."""
    ring: RingSize
    bits: int

    def __post_init__(self):
        if self.ring.n > MAX_MASK_BITS:
            raise HomometryError(
                f"Subsets are limited to N <= {MAX_MASK_BITS} (single-word masks), got N={self.ring.n}"
            )
        if self.bits < 0 or self.bits & ~self.ring.full_mask:
            raise IndexOutOfRangeError(f"Mask {self.bits:#x} has bits outside [0, {self.ring.n - 1}]")
        object.__setattr__(self, "bits", int(self.bits))

    @classmethod
    def from_indices(cls, ring: Union[RingSize, int], indices: Iterable[int]) -> "SubsetMask":
        ring = as_ring(ring)
        bits = 0
        for i in indices:
            bits |= 1 << ring.check_index(i)
        return cls(ring, bits)

    @classmethod
    def empty(cls, ring: RingSize) -> "SubsetMask":
        return cls(ring, 0)

    @classmethod
    def full(cls, ring: RingSize) -> "SubsetMask":
        return cls(ring, ring.full_mask)

    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.ring.n) if self.bits >> i & 1)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def is_empty(self) -> bool:
        return self.bits == 0

    def __len__(self):
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.ring.n and bool(self.bits >> i & 1)

    def __str__(self):
        return "{" + ",".join(str(i) for i in self.indices()) + "}"


@dataclass(frozen=True)
class DistanceMultiset:
    """Multiplicities of the cyclic distances 0..floor(N/2)."""
    ring: RingSize
    mult: Tuple[int, ...]

    def __post_init__(self):
        mult = tuple(int(m) for m in self.mult)
        if len(mult) != self.ring.half + 1:
            raise HomometryError(
                f"Distance multiset for N={self.ring.n} needs {self.ring.half + 1} entries, got {len(mult)}"
            )
        if any(m < 0 for m in mult):
            raise HomometryError(f"Multiplicities must be non-negative: {mult}")
        object.__setattr__(self, "mult", mult)

    @classmethod
    def zero(cls, ring: RingSize) -> "DistanceMultiset":
        return cls(ring, (0,) * (ring.half + 1))

    @property
    def mass(self) -> int:
        return sum(self.mult)

    def multiplicity(self, d: int) -> int:
        return self.mult[d] if 0 <= d < len(self.mult) else 0

    def __add__(self, other: "DistanceMultiset") -> "DistanceMultiset":
        if self.ring != other.ring:
            raise RingMismatchError(f"Cannot add multisets over N={self.ring.n} and N={other.ring.n}")
        return DistanceMultiset(self.ring, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __str__(self):
        parts = []
        for d, m in enumerate(self.mult):
            if m == 1:
                parts.append(str(d))
            elif m > 1:
                parts.append(f"{d}^{m}")
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class Alphabet:
    """Ordered letters (alpha_1, ..., alpha_K). Letter k labels block k of a partition."""
    letters: Tuple[float, ...]

    def __post_init__(self):
        letters = tuple(float(a) for a in self.letters)
        if not letters:
            raise AlphabetError("An alphabet needs at least one letter")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"Alphabet letters must be pairwise distinct: {letters}")
        object.__setattr__(self, "letters", letters)

    @property
    def k(self) -> int:
        return len(self.letters)

    @property
    def sparse(self) -> bool:
        return self.letters[0] == 0.0

    def index_of(self, value: float) -> int:
        for idx, letter in enumerate(self.letters):
            if value == letter or abs(value - letter) <= LETTER_MATCH_TOL:
                return idx
        raise AlphabetError(f"Value {value!r} is not a letter of {self.letters}")


@dataclass(frozen=True)
class OrderedPartition:
    """K disjoint subsets covering [0, N-1]. Block order is significant."""
    ring: RingSize
    blocks: Tuple[SubsetMask, ...]
    allow_empty: bool = field(default=False, compare=False)

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise EmptyBlockError("A partition needs at least one block")
        seen = 0
        for idx, block in enumerate(blocks):
            if block.ring != self.ring:
                raise RingMismatchError(f"Block {idx + 1} lives on N={block.ring.n}, partition on N={self.ring.n}")
            if block.is_empty() and not self.allow_empty:
                raise EmptyBlockError(f"Block {idx + 1} is empty")
            shared = seen & block.bits
            if shared:
                first = (shared & -shared).bit_length() - 1
                raise OverlapError(f"Index {first} appears in more than one block")
            seen |= block.bits
        if seen != self.ring.full_mask:
            missing = [i for i in range(self.ring.n) if not seen >> i & 1]
            raise CoverageError(f"Blocks do not cover the ring; missing indices {missing}")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    @property
    def masks(self) -> Tuple[int, ...]:
        return tuple(b.bits for b in self.blocks)

    def labels(self) -> np.ndarray:
        """Block index of every position, as an int array of length N."""
        labels = np.empty(self.ring.n, dtype=np.int64)
        for idx, block in enumerate(self.blocks):
            labels[list(block.indices())] = idx
        return labels

    @classmethod
    def from_masks(cls, ring: RingSize, masks: Sequence[int], allow_empty: bool = False) -> "OrderedPartition":
        return cls(ring, tuple(SubsetMask(ring, m) for m in masks), allow_empty=allow_empty)

    @classmethod
    def from_labels(cls, ring: Union[RingSize, int], labels: Sequence[int], k: Optional[int] = None,
                    allow_empty: bool = False) -> "OrderedPartition":
        ring = as_ring(ring)
        if len(labels) != ring.n:
            raise HomometryError(f"Expected {ring.n} labels, got {len(labels)}")
        k = k if k is not None else int(max(labels)) + 1
        masks = [0] * k
        for position, label in enumerate(labels):
            if not 0 <= label < k:
                raise ArityMismatchError(f"Label {label} at position {position} is outside [0, {k - 1}]")
            masks[int(label)] |= 1 << position
        return cls.from_masks(ring, masks, allow_empty=allow_empty)

    @classmethod
    def from_signal(cls, signal: "Signal", alphabet: Alphabet, allow_empty: bool = False) -> "OrderedPartition":
        labels = [alphabet.index_of(v) for v in signal.values]
        return cls.from_labels(signal.ring, labels, k=alphabet.k, allow_empty=allow_empty)

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.blocks) + ")"


def make_partition(ring: Union[RingSize, int], blocks: Sequence[Iterable[int]],
                   allow_empty: bool = False) -> OrderedPartition:
    """Build and validate an ordered partition from index collections."""
    ring = as_ring(ring)
    return OrderedPartition(ring, tuple(SubsetMask.from_indices(ring, b) for b in blocks), allow_empty=allow_empty)


@dataclass(frozen=True)
class DihedralElement:
    """One of the 2N symmetries of the N-gon: i -> (+/- i) + shift (mod N), reflection first."""
    reflect: bool = False
    shift: int = 0

    def __post_init__(self):
        if self.shift < 0:
            raise HomometryError(f"Shift must be non-negative, got {self.shift}")
        object.__setattr__(self, "reflect", bool(self.reflect))
        object.__setattr__(self, "shift", int(self.shift))

    def __str__(self):
        return f"s·r^{self.shift}" if self.reflect else f"r^{self.shift}"


@dataclass(frozen=True)
class Signal:
    ring: RingSize
    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != self.ring.n:
            raise HomometryError(f"Signal for N={self.ring.n} needs {self.ring.n} values, got {len(values)}")
        object.__setattr__(self, "values", values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "Signal":
        return cls(RingSize(len(values)), tuple(values))

    @classmethod
    def from_partition(cls, partition: OrderedPartition, alphabet: Alphabet) -> "Signal":
        if alphabet.k != partition.k:
            raise ArityMismatchError(f"Alphabet has {alphabet.k} letters, partition has {partition.k} blocks")
        letters = np.asarray(alphabet.letters, dtype=np.float64)
        return cls(partition.ring, tuple(letters[partition.labels()]))


@dataclass(frozen=True, eq=False)
class AutocorrForm:
    """Exact integer quadratic forms of the autocorrelation, one per lag.

    ``coeffs[l]`` is a symmetric K x K integer matrix. Its diagonal entry (i, i)
    counts ordered pairs (u, u + l) inside block i; an off-diagonal entry (i, j)
    counts pairs running from block i to block j plus pairs from j to i, so it is
    the full coefficient of alpha_i * alpha_j.
    """
    ring: RingSize
    k: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.int64)
        if coeffs.shape != (self.ring.n, self.k, self.k):
            raise HomometryError(f"Form coefficients need shape {(self.ring.n, self.k, self.k)}, got {coeffs.shape}")
        if not np.array_equal(coeffs, coeffs.transpose(0, 2, 1)):
            raise HomometryError("Form coefficient matrices must be symmetric")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def coefficient(self, lag: int, i: int, j: int) -> int:
        """Coefficient of alpha_i * alpha_j at ``lag``; letters numbered from 1."""
        return int(self.coeffs[lag, i - 1, j - 1])

    def upper(self) -> np.ndarray:
        """Coefficients with i <= j only, shape (N, K(K+1)/2)."""
        rows, cols = np.triu_indices(self.k)
        return self.coeffs[:, rows, cols]

    @property
    def mass(self) -> int:
        return int(self.upper().sum())

    def key(self) -> bytes:
        return self.coeffs.tobytes()

    def __eq__(self, other):
        if not isinstance(other, AutocorrForm):
            return NotImplemented
        return self.ring == other.ring and self.k == other.k and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.k, self.key()))
