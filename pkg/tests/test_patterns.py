from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpavoid.patterns import (
    GeneralizedPattern,
    PatternSyntaxError,
    avoids,
    ends_with_occurrence,
    occurrences,
    parse_pattern,
)
from gpavoid.perm import Symmetry, standardize, trivial_map

from oracles import naive_occurrences

perms = st.integers(0, 8).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)
THREE_PATTERNS = ["".join(map(str, p)) for p in permutations((1, 2, 3))]
DASHINGS = [(False, False), (False, True), (True, False), (True, True)]


def _with_dashes(letters: str, adjacency) -> str:
    out = letters[0]
    for glued, ch in zip(adjacency, letters[1:]):
        out += ("" if glued else "-") + ch
    return out


@pytest.mark.parametrize(
    "text, letters, adjacency",
    [
        ("1-32", (1, 3, 2), (False, True)),
        ("132", (1, 3, 2), (True, True)),
        ("2-3-1", (2, 3, 1), (False, False)),
        ("-1-2-", (1, 2), (False,)),
        ("1", (1,), ()),
    ],
)
def test_parse(text, letters, adjacency):
    g = parse_pattern(text)
    assert g.letters == letters and g.adjacency == adjacency


@pytest.mark.parametrize("text, position", [("1-1", 2), ("13", 1), ("1--2", 2), ("1x2", 1), ("", 0), ("-", 0)])
def test_parse_errors_name_position(text, position):
    with pytest.raises(PatternSyntaxError) as info:
        parse_pattern(text)
    assert info.value.position == position


def test_str_round_trip():
    for letters in THREE_PATTERNS:
        for adjacency in DASHINGS:
            text = _with_dashes(letters, adjacency)
            assert str(parse_pattern(text)) == text


def test_occurrence_examples():
    p = (2, 6, 4, 1, 5, 3)
    occ = occurrences(p, parse_pattern("1-2-3"))
    assert [[p[i] for i in t] for t in occ] == [[2, 4, 5]]

    p = (5, 1, 6, 4, 2, 3)
    assert [[p[i] for i in t] for t in occurrences(p, parse_pattern("2-31"))] == [[5, 6, 4]]
    assert [[p[i] for i in t] for t in occurrences(p, parse_pattern("2-3-1"))] == [[5, 6, 4], [5, 6, 2], [5, 6, 3]]


def test_avoidance_examples():
    assert not avoids((1, 3, 2), parse_pattern("132"))
    assert avoids((5, 4, 1, 2, 3), parse_pattern("1-32"))
    assert avoids((1, 2, 3, 4, 5), parse_pattern("21"))
    assert occurrences((1, 2), parse_pattern("123")) == []


@given(perms, st.sampled_from(THREE_PATTERNS), st.sampled_from(DASHINGS))
def test_matches_naive_scan(p, letters, adjacency):
    g = parse_pattern(_with_dashes(letters, adjacency))
    assert occurrences(p, g) == naive_occurrences(p, g.letters, g.adjacency)


@pytest.mark.parametrize("letters", THREE_PATTERNS)
@pytest.mark.parametrize("adjacency", DASHINGS)
def test_avoider_counts_match_naive_scan_up_to_6(letters, adjacency):
    g = parse_pattern(_with_dashes(letters, adjacency))
    for n in range(7):
        fast = sum(avoids(p, g) for p in permutations(range(1, n + 1)))
        slow = sum(not naive_occurrences(p, g.letters, g.adjacency) for p in permutations(range(1, n + 1)))
        assert fast == slow


@given(perms, st.sampled_from(THREE_PATTERNS + ["1234", "2143", "21"]))
def test_dash_relaxation_is_monotone(p, letters):
    consecutive = parse_pattern(letters)
    if avoids(p, consecutive.relaxed()):
        assert avoids(p, consecutive)


@given(st.lists(st.integers(-50, 50), min_size=0, max_size=8, unique=True), st.sampled_from(THREE_PATTERNS),
       st.sampled_from(DASHINGS))
def test_occurrences_depend_only_on_relative_order(word, letters, adjacency):
    g = parse_pattern(_with_dashes(letters, adjacency))
    assert occurrences(word, g) == occurrences(standardize(word), g)


@given(perms, st.sampled_from(THREE_PATTERNS), st.sampled_from(DASHINGS), st.sampled_from(list(Symmetry)))
def test_symmetry_transports_occurrence_counts(p, letters, adjacency, s):
    g = parse_pattern(_with_dashes(letters, adjacency))
    assert len(occurrences(p, g)) == len(occurrences(trivial_map(p, s), g.apply(s)))


@given(perms, st.sampled_from(THREE_PATTERNS), st.sampled_from(DASHINGS))
def test_ends_with_occurrence_agrees_with_prefix_scan(p, letters, adjacency):
    g = parse_pattern(_with_dashes(letters, adjacency))
    for j in range(1, len(p) + 1):
        expected = any(t[-1] == j - 1 for t in naive_occurrences(p[:j], g.letters, g.adjacency))
        assert ends_with_occurrence(p[:j], g) == expected


def test_longer_patterns_supported():
    g = GeneralizedPattern((2, 1, 4, 3), (True, False, True))
    for p in permutations(range(1, 7)):
        assert occurrences(p, g) == naive_occurrences(p, g.letters, g.adjacency)
