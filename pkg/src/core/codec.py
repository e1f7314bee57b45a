"""JSON encodings of the domain types.

Subsets are sorted index arrays, partitions arrays of those, multisets their
multiplicity vectors. Forms are per-lag maps keyed "(i,j)" with i <= j and
letters numbered from 1.
"""
import json
import re
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core import (
    Alphabet,
    AutocorrForm,
    DihedralElement,
    DistanceMultiset,
    OrderedPartition,
    RingSize,
    Signal,
    SubsetMask,
    make_partition,
)
from src.core.errors import HomometryError

SCHEMA = "homometry-lab/v1"

_PAIR_KEY = re.compile(r"^\((\d+),(\d+)\)$")


def encode_subset(A: SubsetMask) -> List[int]:
    return list(A.indices())


def decode_subset(ring: RingSize, data: Sequence[int]) -> SubsetMask:
    return SubsetMask.from_indices(ring, data)


def encode_partition(P: OrderedPartition) -> List[List[int]]:
    return [encode_subset(b) for b in P.blocks]


def decode_partition(ring: RingSize, data: Sequence[Sequence[int]], allow_empty: bool = False) -> OrderedPartition:
    return make_partition(ring, data, allow_empty=allow_empty)


def encode_multiset(M: DistanceMultiset) -> List[int]:
    return list(M.mult)


def decode_multiset(ring: RingSize, data: Sequence[int]) -> DistanceMultiset:
    return DistanceMultiset(ring, tuple(data))


def encode_element(g: DihedralElement) -> Dict[str, Any]:
    return {"reflect": g.reflect, "shift": g.shift}


def decode_element(data: Dict[str, Any], ring: Optional[RingSize] = None) -> DihedralElement:
    g = DihedralElement(bool(data["reflect"]), int(data["shift"]))
    return ring.check_element(g) if ring is not None else g


def encode_alphabet(alphabet: Alphabet) -> List[float]:
    return list(alphabet.letters)


def decode_alphabet(data: Sequence[float]) -> Alphabet:
    return Alphabet(tuple(data))


def encode_signal(x: Signal) -> List[float]:
    return list(x.values)


def decode_signal(data: Sequence[float]) -> Signal:
    return Signal.from_array(data)


def encode_form(F: AutocorrForm) -> List[Dict[str, int]]:
    rows, cols = np.triu_indices(F.k)
    return [
        {f"({i + 1},{j + 1})": int(F.coeffs[lag, i, j]) for i, j in zip(rows.tolist(), cols.tolist())}
        for lag in range(F.ring.n)
    ]


def _parse_pair_key(key: str) -> Tuple[int, int]:
    match = _PAIR_KEY.match(key)
    if not match:
        raise HomometryError(f"Bad coefficient key {key!r}; expected '(i,j)'")
    i, j = int(match.group(1)), int(match.group(2))
    if not 1 <= i <= j:
        raise HomometryError(f"Bad coefficient key {key!r}; letters are numbered from 1 with i <= j")
    return i, j


def decode_form(data: Sequence[Dict[str, int]]) -> AutocorrForm:
    if not data:
        raise HomometryError("A form needs at least one lag")
    entries = [{_parse_pair_key(key): int(value) for key, value in entry.items()} for entry in data]
    k = max((j for entry in entries for _, j in entry), default=0)
    if k == 0:
        raise HomometryError("A form needs at least one coefficient")
    coeffs = np.zeros((len(data), k, k), dtype=np.int64)
    for lag, entry in enumerate(entries):
        for (i, j), value in entry.items():
            coeffs[lag, i - 1, j - 1] = coeffs[lag, j - 1, i - 1] = value
    return AutocorrForm(RingSize(len(data)), k, coeffs)


_ENCODERS = (
    (SubsetMask, encode_subset),
    (OrderedPartition, encode_partition),
    (DistanceMultiset, encode_multiset),
    (DihedralElement, encode_element),
    (Alphabet, encode_alphabet),
    (Signal, encode_signal),
    (AutocorrForm, encode_form),
)


def encode(obj: Any) -> Any:
    """Encode any domain value with the matching encode_* function."""
    for cls, encoder in _ENCODERS:
        if isinstance(obj, cls):
            return encoder(obj)
    raise TypeError(f"No JSON encoding for {type(obj).__name__}")


def dumps(payload: Any) -> str:
    """Stable JSON text: sorted keys, fixed indentation."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def with_schema(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {"schema": SCHEMA, **payload}
