from src.classify import PairClass, PairTaxonomy
from src.combinatorics.diffsets import homometry_key, self_difference
from src.combinatorics.dihedral import are_equivalent_partitions, are_pseudo_equivalent
from src.core import OrderedPartition, SubsetMask
from src.core.errors import ArityMismatchError, require_same_ring


def homometric_subsets(A: SubsetMask, B: SubsetMask) -> bool:
    require_same_ring(A, B)
    return self_difference(A) == self_difference(B)


def homometric_partitions(P: OrderedPartition, Q: OrderedPartition) -> bool:
    """A_i - A_j = B_i - B_j for every i <= j."""
    require_same_ring(P, Q)
    if P.k != Q.k:
        raise ArityMismatchError(f"Partitions have {P.k} and {Q.k} blocks")
    return homometry_key(P) == homometry_key(Q)


def classify_pair(P: OrderedPartition, Q: OrderedPartition) -> PairTaxonomy:
    homometric = homometric_partitions(P, Q)
    equivalence = are_equivalent_partitions(P, Q)
    pseudo = are_pseudo_equivalent(P, Q)
    if not homometric:
        pair_class = PairClass.NOT_HOMOMETRIC
    elif equivalence:
        pair_class = PairClass.EQUIVALENT
    elif pseudo:
        pair_class = PairClass.PSEUDO_ONLY
    else:
        pair_class = PairClass.HOMOMETRIC_ONLY
    return PairTaxonomy(homometric, pair_class, equivalence, pseudo)
