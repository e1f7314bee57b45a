import numpy as np
import pytest

from src.classify import PairClass
from src.classify.homometry import classify_pair, homometric_partitions, homometric_subsets
from src.classify.verifiers import (
    singleton_partitions,
    survey_refinements,
    verify_form_homometry,
    verify_patterson,
    verify_singletons_proposition,
    verify_sparse_theorem,
    verify_two_alphabet_theorem,
)
from src.combinatorics.dihedral import apply_partition, are_equivalent_partitions, reflection, rotation
from src.config import Settings
from src.core import Alphabet, RingSize, SubsetMask, make_partition
from src.core.codec import encode_partition
from src.core.errors import ArityMismatchError, BudgetExceededError
from src.spectral import autocorr_form, forms_equal, numeric_collision_check, random_alphabet


@pytest.mark.parametrize("n", range(1, 13))
def test_patterson_exhaustive(n):
    report = verify_patterson(RingSize(n))
    assert report.ok, report.violations
    assert report.checked == (1 << n) * ((1 << n) - 1) // 2


def test_patterson_finds_non_trivial_homometric_sets():
    details = verify_patterson(RingSize(8)).details
    assert details["non_equivalent_homometric_pairs"] > 0


def test_patterson_sampled_is_seeded():
    first = verify_patterson(RingSize(20), mode="sampled", count=300, seed=11)
    second = verify_patterson(RingSize(20), mode="sampled", count=300, seed=11)
    assert first.ok and first.checked == 300
    assert first.details == second.details == {"seed": 11}


def test_patterson_exhaustive_limit():
    with pytest.raises(BudgetExceededError):
        verify_patterson(RingSize(15))


def test_two_alphabet_theorem():
    report = verify_two_alphabet_theorem(RingSize(8), trials=200, seed=2)
    assert report.ok, report.violations
    assert report.details["partitions"] == 254
    with pytest.raises(BudgetExceededError):
        verify_two_alphabet_theorem(RingSize(13))


@pytest.mark.parametrize("n", range(2, 11))
def test_two_alphabet_theorem_sweep(n):
    report = verify_two_alphabet_theorem(RingSize(n), trials=200, seed=n)
    assert report.ok, report.violations
    assert report.details["partitions"] == (1 << n) - 2


def test_binary_supports_satisfy_all_conditions(binary_supports):
    P, Q = binary_supports
    assert forms_equal(autocorr_form(P), autocorr_form(Q))
    assert homometric_subsets(P.blocks[0], Q.blocks[0])
    assert homometric_subsets(P.blocks[1], Q.blocks[1])
    assert homometric_partitions(P, Q)
    assert not are_equivalent_partitions(P, Q)
    assert numeric_collision_check(P, Q, Alphabet((1.0, 0.0)))
    rng = np.random.default_rng(7)
    for _ in range(20):
        assert numeric_collision_check(P, Q, random_alphabet(2, rng))


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (7, 3), (9, 3), (8, 4)])
def test_sparse_theorem(n, k):
    report = verify_sparse_theorem(RingSize(n), k)
    assert report.ok, report.violations


def test_sparse_theorem_budget():
    with pytest.raises(BudgetExceededError):
        verify_sparse_theorem(RingSize(8), 3, settings=Settings(enumeration_budget=1000))
    with pytest.raises(ArityMismatchError):
        verify_sparse_theorem(RingSize(6), 1)
    with pytest.raises(ArityMismatchError):
        verify_sparse_theorem(RingSize(2), 3)


def test_form_sweep_needs_enough_points():
    with pytest.raises(ArityMismatchError):
        verify_form_homometry(RingSize(3), 5)
    assert verify_form_homometry(RingSize(3), 3).details["partitions"] == 6


@pytest.mark.parametrize("n,k", [(6, 2), (6, 3), (7, 3)])
def test_forms_agree_with_homometry(n, k):
    report = verify_form_homometry(RingSize(n), k)
    assert report.ok, report.violations


@pytest.mark.slow
def test_forms_agree_with_homometry_at_eight():
    assert verify_form_homometry(RingSize(8), 3).ok


@pytest.mark.parametrize("n,k", [(6, 2), (8, 1), (8, 3), (9, 2), (10, 1), (10, 2), (10, 3)])
def test_singletons_proposition(n, k):
    report = verify_singletons_proposition(RingSize(n), k)
    assert report.ok, report.violations
    assert report.details["partitions"] == len(list(singleton_partitions(RingSize(n), k)))


def test_singletons_need_fewer_letters_than_points():
    with pytest.raises(ArityMismatchError):
        verify_singletons_proposition(RingSize(4), 4)


def test_antipodal_singletons_swap_by_half_turn():
    ring = RingSize(6)
    P = make_partition(ring, [[1, 2, 4, 5], [0], [3]])
    Q = make_partition(ring, [[1, 2, 4, 5], [3], [0]])
    assert apply_partition(reflection(), P) == P
    taxonomy = classify_pair(P, Q)
    assert taxonomy.pair_class is PairClass.EQUIVALENT
    assert taxonomy.equivalence.elements == (rotation(ring, 3),)


def _S(indices):
    return SubsetMask.from_indices(8, indices)


def test_refinements_into_two_parts():
    matches = survey_refinements(_S([0, 1, 4, 7]), _S([0, 1, 3, 4]), 2)
    assert len(matches) == 10
    assert all(m.taxonomy.homometric for m in matches)
    balanced = [m for m in matches if m.p.sizes == (4, 2, 2)]
    assert sorted(encode_partition(m.q) for m in balanced) == [
        [[0, 1, 3, 4], [2, 6], [5, 7]],
        [[0, 1, 3, 4], [5, 7], [2, 6]],
    ]


def test_refinements_into_three_parts():
    matches = survey_refinements(_S([0, 1, 4, 7]), _S([0, 1, 3, 4]), 3)
    assert len(matches) == 12
    pairs = {(str(m.p), str(m.q)) for m in matches}
    assert ("({0,1,4,7},{2,6},{3},{5})", "({0,1,3,4},{2,6},{5},{7})") in pairs
    assert all(m.taxonomy.pair_class is PairClass.HOMOMETRIC_ONLY for m in matches)
