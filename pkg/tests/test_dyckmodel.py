"""Paths, sign matrices, interval orders, partitions and the level formula."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catlevel.arrangement import (
    ArrangementSpec,
    Infeasible,
    enumerate_regions,
    recession_cone_dim,
    region_of_point,
)
from catlevel.dyckmodel import (
    BraidUnsupported,
    DyckPath,
    DyckTuple,
    LabeledDyckPath,
    PermutationPartition,
    dyck_tuple,
    incomparability,
    induced_partition,
    interval_orders,
    label_class,
    level,
    omega,
    partition_meet,
    prime_components,
    region_partition,
    sign_matrices,
    tuple_feasible,
)


# --- paths --------------------------------------------------------------


def test_path_validation():
    DyckPath(3, (2, 1, 0))
    with pytest.raises(ValueError):
        DyckPath(3, (1, 2, 0))  # must be nonincreasing
    with pytest.raises(ValueError):
        DyckPath(3, (3, 0, 0))  # row 1 allows at most n - 1


def test_step_string_and_touches():
    path = DyckPath(3, (1, 0, 0))
    assert path.step_string() == "EESESS"
    assert path.touch_points() == (2,)
    assert prime_components(path) == 2
    assert not path.is_prime()
    assert DyckPath(3, (2, 1, 0)).is_prime()


def test_heights_round_trip_examples():
    path = DyckPath(5, (3, 3, 0, 0, 0))
    assert DyckPath.from_heights(path.heights()) == path
    assert path.heights() == (0, 0, 2, 2, 2)


@st.composite
def dyck_paths(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    alpha = []
    prev = n - 1
    for i in range(1, n + 1):
        cap = min(prev, n - i)
        a = draw(st.integers(min_value=0, max_value=cap))
        alpha.append(a)
        prev = a
    return DyckPath(n, tuple(alpha))


@given(dyck_paths())
def test_heights_round_trip(path):
    assert DyckPath.from_heights(path.heights()) == path


@given(dyck_paths())
def test_step_string_is_balanced(path):
    word = path.step_string()
    assert word.count("E") == word.count("S") == path.n
    # prefix condition: never more souths than easts
    east = south = 0
    for ch in word:
        east += ch == "E"
        south += ch == "S"
        assert south <= east


# --- sign data of a region ---------------------------------------------


def worked_region():
    spec = ArrangementSpec.semiorder(5, [3, 2, 1])
    witness = (Fraction(1, 2), 0, Fraction(9, 4), Fraction(11, 2),
               Fraction(23, 4))
    return region_of_point(spec, witness)


def test_sign_matrices_sorted_descending():
    pi, matrices = sign_matrices(worked_region())
    assert pi == (5, 4, 3, 1, 2)
    assert len(matrices) == 3
    # top offset first: its matrix has the fewest pluses
    plus_counts = [sum(M.row_plus_counts()) for M in matrices]
    assert plus_counts == sorted(plus_counts)


def test_dyck_tuple_nesting():
    tup = dyck_tuple(worked_region())
    alphas = [p.plus_counts for p in tup.paths]
    assert alphas == [
        (3, 3, 0, 0, 0),
        (3, 3, 1, 0, 0),
        (3, 3, 2, 0, 0),
    ]
    for a, b in zip(alphas, alphas[1:]):
        assert all(x <= y for x, y in zip(a, b))


def test_dyck_tuple_rejects_broken_nesting():
    with pytest.raises(ValueError):
        DyckTuple((DyckPath(3, (2, 0, 0)), DyckPath(3, (1, 0, 0))))


def test_fundamental_chamber_tuple_example():
    spec = ArrangementSpec.catalan(5, [3, 2, 1])
    witness = (Fraction(41, 5), Fraction(33, 5), 5, Fraction(5, 2), 0)
    tup = dyck_tuple(region_of_point(spec, witness))
    assert [p.plus_counts for p in tup.paths] == [
        (3, 2, 1, 0, 0),
        (3, 2, 2, 1, 0),
        (4, 3, 2, 1, 0),
    ]


def test_braid_spec_has_no_path_model():
    spec = ArrangementSpec.catalan(2, [])
    region = region_of_point(spec, (1, 0))
    with pytest.raises(BraidUnsupported):
        dyck_tuple(region)


# --- interval orders and components ------------------------------------


def test_interval_order_of_worked_region():
    posets = interval_orders(worked_region()).posets
    # top offset: only far-apart pairs are comparable
    p1 = posets[0]
    assert p1.less(3, 4)
    assert p1.less(3, 5)
    assert not p1.less(1, 2)
    g1 = incomparability(p1)
    assert g1.ordered_components() == ((1, 2, 3), (4, 5))
    assert omega(g1) == 2


def test_level_of_worked_region():
    region = worked_region()
    assert level(region) == 2
    assert recession_cone_dim(region) == 2


def test_level_equals_cone_dim_exhaustively():
    for spec in (
        ArrangementSpec.catalan(3, [2, 1]),
        ArrangementSpec.semiorder(3, [2, 1]),
        ArrangementSpec.semiorder(4, [1]),
    ):
        for region in enumerate_regions(spec):
            assert level(region) == recession_cone_dim(region)


# --- permutation partitions --------------------------------------------


def test_partition_basics():
    p = PermutationPartition.from_boundaries((3, 4, 7, 1, 5, 2, 6), [3, 5])
    assert str(p) == "347|15|26"
    assert p.boundaries() == frozenset({3, 5})
    q = PermutationPartition.from_boundaries((3, 4, 7, 1, 5, 2, 6), [3])
    assert p.refines(q)
    assert not q.refines(p)


def test_partition_meet_properties():
    base = (5, 3, 4, 1, 6, 7, 2)
    p = PermutationPartition.from_boundaries(base, [1, 4])
    q = PermutationPartition.from_boundaries(base, [4, 5])
    meet = partition_meet(p, q)
    assert meet.boundaries() == frozenset({1, 4, 5})
    assert meet.refines(p) and meet.refines(q)
    # idempotent and commutative
    assert partition_meet(p, p).boundaries() == p.boundaries()
    assert partition_meet(q, p).boundaries() == meet.boundaries()


@st.composite
def partition_pairs(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    word = tuple(draw(st.permutations(range(1, n + 1))))
    cuts = st.sets(st.integers(min_value=1, max_value=n - 1), max_size=n - 1)
    p = PermutationPartition.from_boundaries(word, sorted(draw(cuts)))
    q = PermutationPartition.from_boundaries(word, sorted(draw(cuts)))
    return p, q


@given(partition_pairs())
def test_meet_is_the_coarsest_common_refinement(pair):
    p, q = pair
    meet = partition_meet(p, q)
    assert meet.refines(p) and meet.refines(q)
    assert meet.boundaries() == p.boundaries() | q.boundaries()


def test_induced_partition_cuts_at_structure_changes():
    labeled = LabeledDyckPath(DyckPath(3, (1, 0, 0)), (3, 1, 2))
    assert str(induced_partition(labeled)) == "3|12"


def test_region_partition_of_expanded_point():
    spec = ArrangementSpec.semiorder(7, [3, 2, 1])
    x = (Fraction(47, 10), Fraction(8, 5), Fraction(19, 4),
         Fraction(471, 100), Fraction(33, 5), Fraction(5, 2),
         Fraction(161, 100))
    region = region_of_point(spec, x)
    assert str(region_partition(region)) == "5|341|6|72"
    cls = label_class(region)
    assert len(cls) == 12
    assert (5, 3, 4, 1, 6, 7, 2) in cls
    assert (5, 4, 3, 1, 6, 2, 7) in cls


def test_label_class_of_looser_region():
    spec = ArrangementSpec.semiorder(7, [3, 2, 1])
    y = (Fraction(47, 10), Fraction(19, 10), Fraction(471, 100),
         Fraction(472, 100), Fraction(33, 5), Fraction(5, 2),
         Fraction(191, 100))
    region = region_of_point(spec, y)
    assert str(region_partition(region)) == "5|431|672"
    cls = label_class(region)
    assert len(cls) == 36
    assert (5, 4, 3, 1, 6, 7, 2) in cls
    assert (5, 1, 4, 3, 6, 2, 7) in cls


# --- feasibility of labeled tuples -------------------------------------


def test_tuple_feasible_round_trip():
    # every region's own tuple and label must map back to the region
    spec = ArrangementSpec.semiorder(3, [2, 1])
    for region in enumerate_regions(spec):
        pi, _ = sign_matrices(region)
        tup = dyck_tuple(region).with_label(pi)
        assert tuple_feasible(tup, spec) == region


def test_tuple_feasible_requires_label():
    spec = ArrangementSpec.catalan(2, [1])
    tup = dyck_tuple(enumerate_regions(spec)[0])
    with pytest.raises(ValueError):
        tuple_feasible(tup, spec)


def test_infeasible_tuple_is_rejected():
    spec = ArrangementSpec.catalan(5, [3, 2, 1])
    tup = DyckTuple((
        DyckPath(5, (2, 2, 1, 0, 0)),
        DyckPath(5, (3, 3, 2, 1, 0)),
        DyckPath(5, (4, 3, 2, 1, 0)),
    )).with_label((1, 2, 3, 4, 5))
    with pytest.raises(Infeasible):
        tuple_feasible(tup, spec)


def test_feasibility_does_not_depend_on_the_label():
    # relabeling only renames coordinates, so feasibility is label-free
    spec = ArrangementSpec.catalan(3, [2, 1])
    tuples = {dyck_tuple(r) for r in enumerate_regions(spec)}
    for tup in tuples:
        for pi in itertools.permutations((1, 2, 3)):
            region = tuple_feasible(tup.with_label(pi), spec)
            assert dyck_tuple(region) == tup
