"""Region enumeration, witnesses, cone dimensions and finite-field counts."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catlevel.arrangement import (
    ArrangementSpec,
    DifferenceConstraint,
    Infeasible,
    Kind,
    OnHyperplane,
    char_poly_finite_field,
    enumerate_regions,
    feasible,
    level_census,
    recession_cone_dim,
    region_of_point,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        ArrangementSpec.catalan(0, [1])
    with pytest.raises(ValueError):
        ArrangementSpec.catalan(2, [1, 2])  # must decrease
    with pytest.raises(ValueError):
        ArrangementSpec.catalan(2, [0])
    with pytest.raises(ValueError):
        ArrangementSpec.semiorder(2, [])
    spec = ArrangementSpec.catalan(3, ["3/2", 1])
    assert spec.offsets == (Fraction(3, 2), Fraction(1))
    assert spec.m == 2


def test_breakpoints_orientation():
    cat = ArrangementSpec.catalan(2, [2, 1])
    assert cat.breakpoints() == (-2, -1, 0, 1, 2)
    semi = ArrangementSpec.semiorder(2, [2, 1])
    assert semi.breakpoints() == (-2, -1, 1, 2)


# --- difference-constraint feasibility ----------------------------------


def test_feasible_returns_a_satisfying_point():
    cons = (
        DifferenceConstraint.greater_than(1, 2, 1),
        DifferenceConstraint.less_than(1, 2, 2),
    )
    x = feasible(cons, 2)
    assert 1 < x[0] - x[1] < 2


def test_feasible_band_picks_the_interior():
    # the eps substitution must land strictly inside, never on the walls
    cons = (
        DifferenceConstraint.greater_than(1, 2, 1),
        DifferenceConstraint.less_than(1, 2, 2),
    )
    x = feasible(cons, 2)
    assert x[0] - x[1] == Fraction(5, 4)


def test_infeasible_carries_a_cycle():
    cons = (
        DifferenceConstraint.greater_than(1, 2, 1),
        DifferenceConstraint.greater_than(2, 3, 1),
        DifferenceConstraint.less_than(1, 3, 1),
    )
    with pytest.raises(Infeasible) as err:
        feasible(cons, 3)
    assert len(err.value.cycle) >= 2
    assert err.value.total.is_negative()


@st.composite
def constraint_systems(draw):
    n = draw(st.integers(min_value=2, max_value=4))
    count = draw(st.integers(min_value=1, max_value=6))
    cons = []
    for _ in range(count):
        i = draw(st.integers(min_value=1, max_value=n))
        j = draw(st.integers(min_value=1, max_value=n).filter(lambda v: v != i))
        bound = draw(st.integers(min_value=-3, max_value=3))
        strict = draw(st.booleans())
        if strict:
            cons.append(DifferenceConstraint.less_than(i, j, bound))
        else:
            cons.append(DifferenceConstraint.at_most(i, j, bound))
    return n, tuple(cons)


@given(constraint_systems())
def test_feasibility_is_monotone_under_dropping_constraints(system):
    n, cons = system
    try:
        feasible(cons, n)
        whole_ok = True
    except Infeasible:
        whole_ok = False
    if whole_ok:
        # every subsystem of a feasible system is feasible
        for k in range(len(cons)):
            feasible(cons[:k] + cons[k + 1:], n)


@given(constraint_systems())
def test_feasible_points_satisfy_every_constraint(system):
    n, cons = system
    try:
        x = feasible(cons, n)
    except Infeasible:
        return
    for c in cons:
        diff = x[c.i - 1] - x[c.j - 1]
        if c.bound.eps_coefficient < 0:
            assert diff < c.bound.real_part
        else:
            assert diff <= c.bound.real_part


# --- enumeration --------------------------------------------------------


def test_tiny_catalan_counts():
    assert len(enumerate_regions(ArrangementSpec.catalan(1, [1]))) == 1
    assert len(enumerate_regions(ArrangementSpec.catalan(2, [1]))) == 4
    assert len(enumerate_regions(ArrangementSpec.catalan(3, [1]))) == 30


def test_tiny_semiorder_counts():
    assert len(enumerate_regions(ArrangementSpec.semiorder(2, [1]))) == 3
    assert len(enumerate_regions(ArrangementSpec.semiorder(3, [1]))) == 19
    assert len(enumerate_regions(ArrangementSpec.semiorder(2, [2, 1]))) == 5
    assert len(enumerate_regions(ArrangementSpec.semiorder(3, [2, 1]))) == 55


def test_enumeration_is_deterministic():
    spec = ArrangementSpec.semiorder(3, [2, 1])
    first = enumerate_regions(spec)
    second = enumerate_regions(spec)
    assert [r.interval_assignment for r in first] == [
        r.interval_assignment for r in second
    ]
    assert [r.witness for r in first] == [r.witness for r in second]


def test_every_witness_is_interior():
    for spec in (
        ArrangementSpec.catalan(3, [2, 1]),
        ArrangementSpec.semiorder(3, [2, 1]),
        ArrangementSpec.catalan(4, [1]),
    ):
        for region in enumerate_regions(spec):
            assert region.witness_valid()


def test_regions_are_distinct():
    spec = ArrangementSpec.catalan(3, [2, 1])
    regions = enumerate_regions(spec)
    assert len(set(regions)) == len(regions) == 72


def test_region_of_point_round_trip():
    spec = ArrangementSpec.semiorder(3, [2, 1])
    for region in enumerate_regions(spec):
        assert region_of_point(spec, region.witness) == region


def test_region_of_point_rejects_wall_points():
    spec = ArrangementSpec.catalan(2, [1])
    with pytest.raises(OnHyperplane):
        region_of_point(spec, (1, 0))


def test_region_equality_ignores_witness():
    spec = ArrangementSpec.catalan(2, [1])
    a = region_of_point(spec, (Fraction(1, 2), 0))
    b = region_of_point(spec, (Fraction(3, 4), 0))
    assert a == b and hash(a) == hash(b)
    assert a.witness != b.witness


def test_braid_only_spec_enumerates_chambers():
    # no offsets: the walls alone cut space into n! chambers
    spec = ArrangementSpec.catalan(3, [])
    assert len(enumerate_regions(spec)) == 6


# --- recession cones ----------------------------------------------------


def test_cone_dimensions_in_dimension_two():
    spec = ArrangementSpec.catalan(2, [1])
    dims = sorted(
        recession_cone_dim(r) for r in enumerate_regions(spec)
    )
    assert dims == [1, 1, 2, 2]


def test_bounded_in_difference_still_level_one():
    # a region pinned to a line has a one-dimensional cone
    spec = ArrangementSpec.semiorder(2, [1])
    region = region_of_point(spec, (0, 0))
    assert recession_cone_dim(region) == 1


def test_every_region_has_positive_level():
    # the all-ones direction never leaves any region
    for region in enumerate_regions(ArrangementSpec.semiorder(3, [2, 1])):
        assert recession_cone_dim(region) >= 1


# --- censuses and characteristic polynomials ----------------------------


def test_level_census_small_catalan():
    census = level_census(ArrangementSpec.catalan(3, [1]))
    assert dict(census.counts) == {0: 0, 1: 12, 2: 12, 3: 6}
    assert census.total == 30
    assert census.count(2) == 12


def test_level_census_oracle_agrees_by_default():
    # use_oracle=True raises on any model/cone mismatch
    for spec in (
        ArrangementSpec.catalan(3, [2, 1]),
        ArrangementSpec.semiorder(3, [2, 1]),
    ):
        level_census(spec, use_oracle=True)


def test_census_json_schema():
    census = level_census(ArrangementSpec.semiorder(2, [2, 1]))
    payload = census.as_json_dict()
    assert payload == {
        "n": 2,
        "kind": "semiorder",
        "offsets": ["2", "1"],
        "counts": {"1": 3, "2": 2},
        "total": 5,
    }


def test_charpoly_spot_values():
    assert str(char_poly_finite_field(ArrangementSpec.catalan(2, [1]))) == \
        "t^2 - 3t"
    assert str(char_poly_finite_field(ArrangementSpec.semiorder(2, [1]))) == \
        "t^2 - 2t"
    assert str(char_poly_finite_field(ArrangementSpec.catalan(2, [2, 1]))) == \
        "t^2 - 5t"
    assert str(char_poly_finite_field(ArrangementSpec.semiorder(2, [2, 1]))) == \
        "t^2 - 4t"
    assert str(char_poly_finite_field(ArrangementSpec.catalan(3, [2, 1]))) == \
        "t^3 - 15t^2 + 56t"
    assert str(char_poly_finite_field(ArrangementSpec.semiorder(3, [2, 1]))) == \
        "t^3 - 12t^2 + 42t"


def test_charpoly_counts_regions_at_minus_one():
    # |chi(-1)| equals the number of regions
    for spec in (
        ArrangementSpec.catalan(3, [1]),
        ArrangementSpec.semiorder(3, [2, 1]),
    ):
        chi = char_poly_finite_field(spec)
        assert abs(chi.evaluate(-1)) == len(enumerate_regions(spec))
