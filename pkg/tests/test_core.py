import numpy as np
import pytest

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


@pytest.mark.parametrize("n", [0, -3, True, 2.5])
def test_ring_rejects_bad_sizes(n):
    with pytest.raises(HomometryError):
        RingSize(n)


def test_subset_basics(ring8):
    A = SubsetMask.from_indices(ring8, [7, 0, 4, 1])
    assert str(A) == "{0,1,4,7}"
    assert A.indices() == (0, 1, 4, 7)
    assert A.size == len(A) == 4
    assert 4 in A and 2 not in A and 9 not in A
    assert list(A) == [0, 1, 4, 7]
    assert SubsetMask.empty(ring8).is_empty()
    assert SubsetMask.full(ring8).size == 8


@pytest.mark.parametrize("index", [8, -1, 100])
def test_subset_rejects_out_of_range(ring8, index):
    with pytest.raises(IndexOutOfRangeError):
        SubsetMask.from_indices(ring8, [0, index])


def test_subset_mask_limit():
    with pytest.raises(HomometryError):
        SubsetMask(RingSize(65), 0)


def test_partition_validation():
    with pytest.raises(OverlapError):
        make_partition(4, [[0, 1], [1, 2, 3]])
    with pytest.raises(CoverageError):
        make_partition(4, [[0, 1], [2]])
    with pytest.raises(EmptyBlockError):
        make_partition(4, [[0, 1, 2, 3], []])
    P = make_partition(4, [[0, 1, 2, 3], []], allow_empty=True)
    assert P.sizes == (4, 0)


def test_partition_block_on_other_ring():
    with pytest.raises(RingMismatchError):
        OrderedPartition(RingSize(4), (SubsetMask.full(RingSize(5)),))


def test_partition_labels_round_trip():
    P = make_partition(4, [[0, 2], [1, 3]])
    assert P.labels().tolist() == [0, 1, 0, 1]
    assert OrderedPartition.from_labels(4, [0, 1, 0, 1]) == P
    assert P.k == 2 and P.sizes == (2, 2)
    assert str(P) == "({0,2},{1,3})"


def test_partition_from_labels_rejects_label_outside_k():
    with pytest.raises(ArityMismatchError):
        OrderedPartition.from_labels(4, [0, 1, 2, 0], k=2)


def test_signal_and_partition_views():
    P = make_partition(4, [[0, 2], [1, 3]])
    alphabet = Alphabet((1.0, 2.0))
    x = Signal.from_partition(P, alphabet)
    assert x.values == (1.0, 2.0, 1.0, 2.0)
    assert OrderedPartition.from_signal(x, alphabet) == P


def test_signal_with_foreign_value():
    with pytest.raises(AlphabetError):
        OrderedPartition.from_signal(Signal.from_array([1, 3, 1, 2]), Alphabet((1.0, 2.0)))


def test_signal_arity_mismatch():
    P = make_partition(4, [[0, 2], [1, 3]])
    with pytest.raises(ArityMismatchError):
        Signal.from_partition(P, Alphabet((1.0, 2.0, 3.0)))


def test_alphabet_letters_distinct():
    with pytest.raises(AlphabetError):
        Alphabet((1.0, 1.0))
    assert Alphabet((0, 2)).sparse
    assert not Alphabet((1, 2)).sparse


def test_multiset_rendering_and_sum(ring8):
    M = DistanceMultiset(ring8, (4, 2, 1, 2, 1))
    assert str(M) == "{0^4,1^2,2,3^2,4}"
    assert M.mass == 10
    assert M.multiplicity(3) == 2 and M.multiplicity(7) == 0
    assert (M + DistanceMultiset.zero(ring8)) == M
    with pytest.raises(RingMismatchError):
        M + DistanceMultiset.zero(RingSize(9))
    with pytest.raises(HomometryError):
        DistanceMultiset(ring8, (1, 2))


def test_dihedral_element_rendering():
    assert str(DihedralElement(False, 3)) == "r^3"
    assert str(DihedralElement(True, 0)) == "s·r^0"
    with pytest.raises(HomometryError):
        DihedralElement(False, -1)


def test_form_validation():
    ring = RingSize(2)
    with pytest.raises(HomometryError):
        AutocorrForm(ring, 2, np.array([[[0, 1], [0, 0]], [[0, 0], [0, 0]]]))
    with pytest.raises(HomometryError):
        AutocorrForm(ring, 2, np.zeros((3, 2, 2)))
    F = AutocorrForm(ring, 1, np.array([[[2]], [[0]]]))
    assert F.coefficient(0, 1, 1) == 2
    assert F == AutocorrForm(ring, 1, np.array([[[2]], [[0]]]))
    assert hash(F) == hash(AutocorrForm(ring, 1, np.array([[[2]], [[0]]])))
    with pytest.raises(ValueError):
        F.coeffs[0, 0, 0] = 5
