import pytest
from hypothesis import settings as hypothesis_settings

from src.config import Settings
from src.core import RingSize, make_partition

hypothesis_settings.register_profile("deterministic", derandomize=True)
hypothesis_settings.load_profile("deterministic")


@pytest.fixture
def ring8():
    return RingSize(8)


@pytest.fixture
def serial_settings():
    return Settings(workers=1)


@pytest.fixture
def singleton_swap(ring8):
    """Homometric and pseudo-equivalent, but no single symmetry maps one onto the other."""
    p = make_partition(ring8, [[0, 1, 4], [7], [3], [2, 5, 6]])
    q = make_partition(ring8, [[0, 1, 4], [3], [7], [2, 5, 6]])
    return p, q


@pytest.fixture
def refinement_pair(ring8):
    p = make_partition(ring8, [[0, 1, 4, 7], [2, 6], [3, 5]])
    q = make_partition(ring8, [[0, 1, 3, 4], [2, 6], [5, 7]])
    return p, q


@pytest.fixture
def binary_supports(ring8):
    """Supports {2,3,5,6} and {2,5,6,7}: homometric, not equivalent."""
    p = make_partition(ring8, [[2, 3, 5, 6], [0, 1, 4, 7]])
    q = make_partition(ring8, [[2, 5, 6, 7], [0, 1, 3, 4]])
    return p, q
