from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from src.core.codec import with_schema
from src.core.errors import HomometryError


@dataclass(frozen=True)
class SizeProfile:
    """Block sizes of an ordered partition, in block order."""
    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise HomometryError(f"Profile sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> "SizeProfile":
        """Accepts "4,3,3" or "4-3-3"."""
        try:
            return cls(tuple(int(part) for part in text.replace("-", ",").split(",") if part.strip()))
        except ValueError:
            raise HomometryError(f"Cannot read a size profile from {text!r}")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def __str__(self):
        return "-".join(str(s) for s in self.sizes)


@dataclass(frozen=True)
class ExperimentReport:
    n: int
    profile: SizeProfile
    population: int
    sampled: bool
    sample_size: Optional[int]
    seed: Optional[int]
    pairs_checked: int
    equivalent_pairs: int
    pseudo_only_pairs: int
    homometric_only_pairs: int
    orbit_oracle_pairs: Optional[int] = None
    elapsed_ms: int = 0

    @property
    def total_homometric(self) -> int:
        return self.equivalent_pairs + self.pseudo_only_pairs + self.homometric_only_pairs

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        payload = {
            "n": self.n,
            "sizes": list(self.profile.sizes),
            "population": self.population,
            "sampled": self.sampled,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "equivalent_pairs": self.equivalent_pairs,
            "pseudo_only_pairs": self.pseudo_only_pairs,
            "homometric_only_pairs": self.homometric_only_pairs,
            "total_homometric": self.total_homometric,
            "orbit_oracle_pairs": self.orbit_oracle_pairs,
        }
        if timing:
            payload["elapsed_ms"] = self.elapsed_ms
        return with_schema(payload)
