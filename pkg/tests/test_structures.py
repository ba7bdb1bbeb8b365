import json
from itertools import product
from math import comb

import pytest

from gpavoid.counting import CountQuery, brute_enumerate
from gpavoid.patterns import avoids, parse_pattern
from gpavoid.perm import BoundaryConstraint
from gpavoid.structures import (
    BijectionError,
    DomainError,
    MarkedPartition,
    Tree,
    bell,
    count_irtt,
    increasing_trees,
    is_irtt,
    lemma2_sides,
    marked_partitions,
    p_count_formula,
    partition_to_perm,
    perm_to_partition,
    perm_to_tree,
    set_partitions,
    stirling2,
    thm4_is_valid,
    tree_to_perm,
)

TREE_WORD = (2, 9, 10, 5, 3, 1, 11, 13, 14, 8, 12, 7, 4, 6)


def rgs_partitions(n):
    """Restricted growth strings; independent of set_partitions."""
    for rgs in product(range(n), repeat=n):
        if all(rgs[i] <= max(rgs[:i], default=-1) + 1 for i in range(n)):
            yield rgs


def mp(blocks, marked):
    return MarkedPartition(tuple(tuple(b) for b in blocks), marked)


# frozen from rgs_partitions
BELL = [1, 1, 2, 5, 15, 52, 203]
STIRLING = [[1], [0, 1], [0, 1, 1], [0, 1, 3, 1], [0, 1, 7, 6, 1], [0, 1, 15, 25, 10, 1]]
MARKED = [1, 3, 10, 37, 151, 674]


def test_frozen_values_match_oracle():
    assert [sum(1 for _ in rgs_partitions(n)) for n in range(7)] == BELL
    assert [sum(max(r) + 1 for r in rgs_partitions(n)) for n in range(1, 7)] == MARKED


def test_bell_and_stirling():
    assert [bell(n) for n in range(7)] == BELL
    for n, row in enumerate(STIRLING):
        assert [stirling2(n, k) for k in range(n + 1)] == row
    assert stirling2(3, 0) == 0
    assert stirling2(3, 5) == 0
    with pytest.raises(DomainError):
        bell(-1)
    with pytest.raises(DomainError):
        stirling2(-1, 0)


def test_bell_two_routes_to_30():
    for n in range(31):
        assert bell(n) == sum(stirling2(n, k) for k in range(n + 1))
        assert bell(n + 1) == sum(comb(n, i) * bell(i) for i in range(n + 1))


def test_p_count_formula():
    assert p_count_formula(4, 2) == 10
    assert p_count_formula(4, 1) == 15
    for k in range(1, 8):
        assert p_count_formula(k, k) == 1
    with pytest.raises(DomainError):
        p_count_formula(3, 4)


def test_lemma2_sides():
    assert lemma2_sides(0) == (0, 0)
    assert lemma2_sides(1) == (1, 1)
    assert lemma2_sides(4) == (37, 37)
    for n in range(21):
        left, right = lemma2_sides(n)
        assert left == right


def test_set_partitions_match_oracle():
    for n in range(1, 7):
        ours = sorted(tuple(sorted(p)) for p in set_partitions(n))
        theirs = set()
        for rgs in rgs_partitions(n):
            blocks = {}
            for a, label in enumerate(rgs, start=1):
                blocks.setdefault(label, []).append(a)
            theirs.add(tuple(sorted(tuple(b) for b in blocks.values())))
        assert ours == sorted(theirs)


def test_marked_partitions():
    one = list(marked_partitions(1))
    assert one == [mp([[1]], 0)]
    assert sum(1 for _ in marked_partitions(3)) == 10
    assert sum(1 for _ in marked_partitions(4)) == 37
    for m in range(1, 7):
        items = list(marked_partitions(m))
        assert len(items) == len(set(items)) == MARKED[m - 1]
        assert all(1 in pp.last for pp in items)
    with pytest.raises(DomainError):
        list(marked_partitions(0))


def test_canonical_order_enforced():
    with pytest.raises(ValueError):
        mp([[1], [2, 3], [4]], 0)
    with pytest.raises(ValueError):
        mp([[4], [2, 3], [1]], 3)
    assert MarkedPartition.canonical([[1], [4], [3, 2]], [2, 3]) == mp([[4], [2, 3], [1]], 1)


def test_validity_conditions():
    assert thm4_is_valid(mp([[4], [2, 3], [1]], 1), 3)
    assert not thm4_is_valid(mp([[4], [2, 3], [1]], 2), 3)
    for pp in marked_partitions(5):
        assert thm4_is_valid(pp, 2)


def test_partition_to_perm_worked_examples():
    assert partition_to_perm(mp([[4], [2, 3], [1]], 1), 2) == (5, 4, 1, 2, 3)
    assert partition_to_perm(mp([[5], [3, 4], [1, 2]], 1), 2) == (5, 3, 4, 6, 1, 2)
    assert partition_to_perm(mp([[5], [2, 3, 4], [1]], 2), 2) == (5, 2, 3, 4, 1, 6)


def test_perm_to_partition_worked_examples():
    assert perm_to_partition((5, 4, 1, 2, 3), 2) == mp([[4], [2, 3], [1]], 1)
    assert perm_to_partition((5, 3, 4, 6, 1, 2), 2) == mp([[5], [3, 4], [1, 2]], 1)
    assert perm_to_partition((5, 2, 3, 4, 1, 6), 2) == mp([[5], [2, 3, 4], [1]], 2)


def test_bijection_rejections():
    with pytest.raises(BijectionError) as info:
        partition_to_perm(mp([[4], [2, 3], [1]], 2), 3)
    assert info.value.condition == 1
    with pytest.raises(BijectionError) as info:
        partition_to_perm(mp([[3], [1, 2]], 0), 3)
    assert info.value.condition == 2
    with pytest.raises(BijectionError) as info:
        partition_to_perm(mp([[3], [2], [1]], 0), 3)
    assert info.value.condition == 3
    with pytest.raises(BijectionError, match="1-32"):
        perm_to_partition((1, 3, 2, 4), 2)
    with pytest.raises(BijectionError, match="increasing run"):
        perm_to_partition((2, 1), 2)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_round_trip_and_image(k):
    end_k = BoundaryConstraint("end", "increasing", k)
    for m in range(1, 8):
        seen = set()
        for pp in marked_partitions(m):
            if not thm4_is_valid(pp, k):
                continue
            p = partition_to_perm(pp, k)
            assert avoids(p, parse_pattern("1-32"))
            assert p[-k:] == tuple(sorted(p[-k:]))
            assert perm_to_partition(p, k) == pp
            seen.add(p)
        expected = set(brute_enumerate(CountQuery(parse_pattern("1-32"), end_k, m + 1)))
        assert seen == expected


def test_worked_tree():
    t = perm_to_tree(TREE_WORD)
    assert len(t) == 15 and is_irtt(t)
    assert [c.label for c in t.children] == [1, 4, 6]
    by_label = {node.label: [c.label for c in node.children] for node in t.nodes()}
    assert by_label[1] == [2, 3]
    assert by_label[3] == [5]
    assert by_label[5] == [9, 10]
    assert by_label[4] == [7]
    assert by_label[7] == [8, 12]
    assert by_label[8] == [11, 13, 14]
    assert tree_to_perm(t) == TREE_WORD


def test_small_trees():
    assert perm_to_tree((1, 2)) == Tree(0, (Tree(1), Tree(2)))
    assert perm_to_tree((1, 2, 3)) == Tree(0, (Tree(1), Tree(2), Tree(3)))
    assert tree_to_perm(Tree(0, (Tree(2), Tree(1)))) == (1, 2)
    assert tree_to_perm(Tree(0)) == ()
    assert perm_to_tree(()) == Tree(0)


def test_tree_json_round_trip():
    t = perm_to_tree(TREE_WORD)
    text = json.dumps(t.to_json())
    assert Tree.from_json(text) == t
    assert json.dumps(perm_to_tree((1, 2)).to_json()) == (
        '{"label": 0, "children": [{"label": 1, "children": []}, {"label": 2, "children": []}]}'
    )


def test_partition_json_is_bit_exact():
    pp = mp([[4], [2, 3], [1]], 1)
    assert json.dumps(pp.to_json()) == '{"blocks": [[4], [2, 3], [1]], "marked": 1}'
    assert MarkedPartition.from_json('{"blocks": [[4], [2, 3], [1]], "marked": 1}') == pp


def test_tree_rejections():
    with pytest.raises(BijectionError, match="single leaf child"):
        tree_to_perm(Tree(0, (Tree(1),)))
    with pytest.raises(BijectionError, match="not larger"):
        tree_to_perm(Tree(0, (Tree(2, (Tree(1), Tree(3))),)))
    with pytest.raises(BijectionError):
        perm_to_tree((2, 1))
    with pytest.raises(BijectionError, match="132"):
        perm_to_tree((1, 3, 2))


def test_count_irtt_small():
    assert count_irtt(1) == 1
    assert count_irtt(2) == 0
    assert count_irtt(3) == 1
    assert count_irtt(4) == 2


def test_count_irtt_matches_tree_objects():
    for nodes in range(1, 8):
        assert count_irtt(nodes) == sum(is_irtt(t) for t in increasing_trees(nodes))


def test_tree_round_trip_to_9():
    domain = parse_pattern("132")
    start = BoundaryConstraint("begin", "increasing", 2)
    for n in range(1, 10):
        witnesses = list(brute_enumerate(CountQuery(domain, start, n)))
        for p in witnesses:
            assert tree_to_perm(perm_to_tree(p)) == p
        if n <= 7:
            trees = [t for t in increasing_trees(n + 1) if is_irtt(t)]
            assert sorted(tree_to_perm(t) for t in trees) == witnesses
