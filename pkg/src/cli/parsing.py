"""Literal syntax for the command line.

A subset is a comma list of indices ("0,1,4,7"; "" is the empty set). A
partition joins its blocks with "|" ("0,1,4,7|2,6|3,5").
"""
from typing import List

from src.core import OrderedPartition, RingSize, SubsetMask, make_partition
from src.core.errors import HomometryError


def parse_indices(text: str) -> List[int]:
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        return []
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise HomometryError(f"Cannot read indices from {text!r}; expected e.g. \"0,1,4,7\"")


def parse_subset(ring: RingSize, text: str) -> SubsetMask:
    return SubsetMask.from_indices(ring, parse_indices(text))


def parse_partition(ring: RingSize, text: str) -> OrderedPartition:
    return make_partition(ring, [parse_indices(block) for block in text.split("|")])
