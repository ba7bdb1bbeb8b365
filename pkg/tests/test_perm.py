import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpavoid.perm import (
    BEGIN,
    DECREASING,
    END,
    INCREASING,
    BoundaryConstraint,
    Symmetry,
    boundary_satisfies,
    map_constraint,
    parse_permutation,
    right_to_left_minima,
    trivial_map,
)

perms = st.integers(0, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)


def test_reverse_and_complement_examples():
    assert trivial_map((1, 3, 4, 2), "R") == (2, 4, 3, 1)
    assert trivial_map((1, 3, 4, 2), "C") == (4, 2, 1, 3)
    assert trivial_map((), "R") == ()


@given(perms)
def test_involutions_and_composition(p):
    assert trivial_map(trivial_map(p, "R"), "R") == p
    assert trivial_map(trivial_map(p, "C"), "C") == p
    assert trivial_map(p, "RC") == trivial_map(trivial_map(p, "C"), "R")
    assert len(trivial_map(p, "RC")) == len(p)


def test_symmetry_group_closure():
    for s in Symmetry:
        assert s.compose(s) is Symmetry.IDENTITY
    assert Symmetry.REVERSE.compose(Symmetry.COMPLEMENT) is Symmetry.REVERSE_COMPLEMENT


@pytest.mark.parametrize(
    "p, constraint, expected",
    [
        ((5, 4, 1, 2, 3), BoundaryConstraint(END, INCREASING, 3), True),
        ((2, 1, 3, 4, 5), BoundaryConstraint(BEGIN, INCREASING, 2), False),
        ((), BoundaryConstraint(BEGIN, INCREASING, 1), True),
        ((1,), BoundaryConstraint(BEGIN, INCREASING, 2), False),
        ((3, 2, 1), BoundaryConstraint(END, DECREASING, 3), True),
    ],
)
def test_boundary_examples(p, constraint, expected):
    assert boundary_satisfies(p, constraint) is expected


@given(perms, st.integers(1, 5))
def test_boundary_symmetry_table(p, k):
    if len(p) < k:
        return
    base = boundary_satisfies(p, BoundaryConstraint(BEGIN, INCREASING, k))
    assert base == boundary_satisfies(trivial_map(p, "R"), BoundaryConstraint(END, DECREASING, k))
    assert base == boundary_satisfies(trivial_map(p, "C"), BoundaryConstraint(BEGIN, DECREASING, k))
    assert base == boundary_satisfies(trivial_map(p, "RC"), BoundaryConstraint(END, INCREASING, k))


@given(perms, st.sampled_from(list(Symmetry)), st.sampled_from([BEGIN, END]),
       st.sampled_from([INCREASING, DECREASING]), st.integers(1, 4))
def test_map_constraint_transports_satisfaction(p, s, placement, direction, k):
    c = BoundaryConstraint(placement, direction, k)
    assert boundary_satisfies(p, c) == boundary_satisfies(trivial_map(p, s), map_constraint(c, s))


def test_right_to_left_minima_examples():
    assert right_to_left_minima((2, 9, 10, 5, 3, 1, 11, 13, 14, 8, 12, 7, 4, 6)) == [1, 4, 6]
    assert right_to_left_minima((1, 2, 3)) == [1, 2, 3]
    assert right_to_left_minima((3, 2, 1)) == [1]
    assert right_to_left_minima(()) == []


@given(perms)
def test_right_to_left_minima_shape(p):
    mins = right_to_left_minima(p)
    if p:
        assert mins[0] == 1 and mins[-1] == p[-1]
    assert all(a < b for a, b in zip(mins, mins[1:]))


@pytest.mark.parametrize("text", ["5 4 1 2 3", "5,4,1,2,3", "54123", " 5, 4 ,1 2 3 "])
def test_parse_permutation_formats(text):
    assert parse_permutation(text) == (5, 4, 1, 2, 3)


def test_parse_permutation_rejects_non_permutations():
    with pytest.raises(ValueError):
        parse_permutation("1 1 2")
    with pytest.raises(ValueError):
        parse_permutation("1 a")


def test_constraint_validation():
    with pytest.raises(ValueError):
        BoundaryConstraint(BEGIN, INCREASING, 0)
    with pytest.raises(ValueError):
        BoundaryConstraint("middle", INCREASING, 2)
    assert str(BoundaryConstraint.from_flag("end-dec", 3)) == "end-dec:3"
