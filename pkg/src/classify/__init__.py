from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List

from src.combinatorics.dihedral import Witness
from src.core.codec import with_schema


class PairClass(Enum):
    EQUIVALENT = "EQUIVALENT"
    PSEUDO_ONLY = "PSEUDO_ONLY"
    HOMOMETRIC_ONLY = "HOMOMETRIC_ONLY"
    NOT_HOMOMETRIC = "NOT_HOMOMETRIC"


@dataclass(frozen=True)
class PairTaxonomy:
    """Where a pair of ordered partitions sits among the homometric pairs.

    PSEUDO_ONLY means pseudo-equivalent but not equivalent, so the classes are
    disjoint and the homometric ones add up to the total.
    """
    homometric: bool
    pair_class: PairClass
    equivalence: Witness = Witness(False)
    pseudo_equivalence: Witness = Witness(False)

    def summary(self) -> str:
        return ", ".join([
            "homometric" if self.homometric else "not homometric",
            "equivalent" if self.equivalence else "not equivalent",
            "pseudo-equivalent" if self.pseudo_equivalence else "not pseudo-equivalent",
        ])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "homometric": self.homometric,
            "class": self.pair_class.value,
            "equivalent": {"holds": self.equivalence.holds,
                           "witnesses": [str(g) for g in self.equivalence.elements]},
            "pseudo_equivalent": {"holds": self.pseudo_equivalence.holds,
                                  "witnesses": [str(g) for g in self.pseudo_equivalence.elements]},
        }


@dataclass
class VerificationReport:
    name: str
    n: int
    checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    elapsed_ms: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return with_schema({
            "name": self.name,
            "n": self.n,
            "checked": self.checked,
            "violations": self.violations,
            "elapsed_ms": self.elapsed_ms,
            "details": self.details,
        })
