"""Set partitions with a marked block, increasing trimmed trees, and the
bijections tying them to pattern-avoiding permutations.

Partitions are kept in canonical order: blocks sorted by decreasing
minimum, so the block containing 1 is always last.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from math import comb
from typing import Any, Iterator, Sequence

from .patterns import first_occurrence, parse_pattern
from .perm import END, INCREASING, BoundaryConstraint, Permutation, boundary_satisfies, right_to_left_minima

ONE_DASH_THREE_TWO = parse_pattern("1-32")
CONSECUTIVE_132 = parse_pattern("132")


class DomainError(ValueError):
    """Argument outside the domain of a counting function."""


class BijectionError(ValueError):
    """Input is not in the domain of a bijection.

    ``condition`` carries the number of the violated validity condition when the
    failure is a partition validity check.
    """

    def __init__(self, message: str, condition: int | None = None):
        self.condition = condition
        super().__init__(message)


# --------------------------------------------------------------------------
# Bell and Stirling numbers

_lock = threading.Lock()
_bell: list[int] = [1]
_stirling: list[list[int]] = [[1]]


def bell(n: int) -> int:
    """Number of set partitions of an n-set, via B_{n+1} = sum C(n,i) B_i."""
    if n < 0:
        raise DomainError(f"bell(n) needs n >= 0, got {n}")
    if n >= len(_bell):
        with _lock:
            while len(_bell) <= n:
                m = len(_bell) - 1
                _bell.append(sum(comb(m, i) * _bell[i] for i in range(m + 1)))
    return _bell[n]


def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise DomainError(f"stirling2 needs non-negative arguments, got ({n}, {k})")
    if k > n:
        return 0
    if n >= len(_stirling):
        with _lock:
            while len(_stirling) <= n:
                prev = _stirling[-1]
                m = len(prev)
                row = [0] * (m + 1)
                for j in range(1, m + 1):
                    row[j] = j * (prev[j] if j < m else 0) + prev[j - 1]
                _stirling.append(row)
    return _stirling[n][k]


def p_count_formula(n: int, k: int) -> int:
    """sum_{i=0}^{n-k} C(n-1, i) B_i: 1-32 avoiders ending with an increasing k-run."""
    if n < 1 or k < 1:
        raise DomainError(f"p_count_formula needs n >= 1 and k >= 1, got ({n}, {k})")
    if k > n:
        raise DomainError(f"p_count_formula needs k <= n, got ({n}, {k})")
    return sum(comb(n - 1, i) * bell(i) for i in range(n - k + 1))


def lemma2_sides(n: int) -> tuple[int, int]:
    """(sum_{i<n} C(n,i) B_i, sum_i i S(n,i)), computed along separate paths."""
    if n < 0:
        raise DomainError(f"lemma2_sides needs n >= 0, got {n}")
    left = sum(comb(n, i) * bell(i) for i in range(n))
    right = sum(i * stirling2(n, i) for i in range(n + 1))
    return left, right


# --------------------------------------------------------------------------
# Marked partitions

@dataclass(frozen=True)
class MarkedPartition:
    """Blocks in canonical order plus the 0-based index of the marked block."""

    blocks: tuple[tuple[int, ...], ...]
    marked: int

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("a marked partition needs at least one block")
        if any(not b for b in self.blocks):
            raise ValueError("blocks must be non-empty")
        if any(list(b) != sorted(set(b)) for b in self.blocks):
            raise ValueError("blocks must be strictly increasing tuples")
        flat = sorted(a for b in self.blocks for a in b)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError("blocks must partition {1..m}")
        mins = [b[0] for b in self.blocks]
        if any(mins[i] <= mins[i + 1] for i in range(len(mins) - 1)):
            raise ValueError("blocks are not in canonical (decreasing minimum) order")
        if not 0 <= self.marked < len(self.blocks):
            raise ValueError(f"marked index {self.marked} out of range")

    @classmethod
    def canonical(cls, blocks: Sequence[Sequence[int]], marked_block: Sequence[int]) -> MarkedPartition:
        """Build from blocks in any order, marking the block equal to ``marked_block``."""
        norm = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: -b[0])
        target = tuple(sorted(marked_block))
        return cls(tuple(norm), norm.index(target))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def last(self) -> tuple[int, ...]:
        return self.blocks[-1]

    @property
    def marked_block(self) -> tuple[int, ...]:
        return self.blocks[self.marked]

    def __str__(self) -> str:
        parts = []
        for i, b in enumerate(self.blocks):
            s = "".join(map(str, b)) if max(b) < 10 else ",".join(map(str, b))
            parts.append(f"[{s}]" if i == self.marked else s)
        return " | ".join(parts)

    def to_json(self) -> dict[str, Any]:
        return {"blocks": [list(b) for b in self.blocks], "marked": self.marked}

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> MarkedPartition:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(b) for b in data["blocks"]), int(data["marked"]))


def set_partitions(m: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of {1..m} in canonical block order."""
    blocks: list[list[int]] = []

    def place(a: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if a > m:
            yield tuple(sorted((tuple(b) for b in blocks), key=lambda b: -b[0]))
            return
        for b in blocks:
            b.append(a)
            yield from place(a + 1)
            b.pop()
        blocks.append([a])
        yield from place(a + 1)
        blocks.pop()

    yield from place(1)


def marked_partitions(m: int) -> Iterator[MarkedPartition]:
    if m <= 0:
        raise DomainError(f"marked_partitions needs m >= 1, got {m}")
    for blocks in set_partitions(m):
        for i in range(len(blocks)):
            yield MarkedPartition(blocks, i)


def partition_violation(pp: MarkedPartition, k: int) -> int | None:
    """Number of the violated condition, or None when ``pp`` is admissible."""
    last = len(pp.last)
    if pp.marked == len(pp.blocks) - 1:
        return None if last >= k - 1 else 1
    if last != 1:
        return None if last >= k else 2
    return None if len(pp.marked_block) >= k - 1 else 3


def thm4_is_valid(pp: MarkedPartition, k: int) -> bool:
    if k < 2:
        raise DomainError(f"run length must be >= 2, got {k}")
    if not isinstance(pp, MarkedPartition):
        raise TypeError("expected a MarkedPartition")
    return partition_violation(pp, k) is None


def partition_to_perm(pp: MarkedPartition, k: int = 2) -> Permutation:
    """Marked partition of {1..m} -> 1-32 avoider of length m+1 ending in 12...k."""
    if k < 2:
        raise DomainError(f"run length must be >= 2, got {k}")
    bad = partition_violation(pp, k)
    if bad is not None:
        raise BijectionError(f"{pp} violates condition {bad} for k={k}", condition=bad)
    n = pp.size + 1
    blocks = pp.blocks
    last = len(blocks) - 1
    if blocks[last] == (1,) and pp.marked != last:
        middle = [a for j, b in enumerate(blocks[:last]) if j != pp.marked for a in b]
        return (n, *middle, 1, *blocks[pp.marked])
    out: list[int] = []
    for j, b in enumerate(blocks):
        out.extend(b)
        if j == pp.marked:
            out.append(n)
    return tuple(out)


def _increasing_runs(word: Sequence[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for a in word:
        if runs and runs[-1][-1] < a:
            runs[-1].append(a)
        else:
            runs.append([a])
    return runs


def _check_partition_image(p: Sequence[int], k: int) -> None:
    if len(p) < 2:
        raise BijectionError(f"{p!r} is too short; need length >= 2")
    occ = first_occurrence(p, ONE_DASH_THREE_TWO)
    if occ is not None:
        letters = [p[i] for i in occ]
        raise BijectionError(f"{p!r} contains 1-32 at positions {[i + 1 for i in occ]} (letters {letters})")
    if not boundary_satisfies(p, BoundaryConstraint(END, INCREASING, k)):
        raise BijectionError(f"{p!r} does not end with an increasing run of length {k}")


def perm_to_partition(p: Sequence[int], k: int = 2) -> MarkedPartition:
    """Inverse of :func:`partition_to_perm`."""
    _check_partition_image(p, k)
    n = len(p)
    if p[0] == n:
        rest = list(p[1:])
        cut = rest.index(1)
        marked = rest[cut + 1:]
        blocks = _increasing_runs(rest[:cut]) + [[1], marked]
        return MarkedPartition.canonical(blocks, marked)
    runs = _increasing_runs(p)
    for run in runs:
        if run[-1] == n:
            run.pop()
            return MarkedPartition.canonical(runs, run)
    raise AssertionError("unreachable: the maximum always ends its run")


# --------------------------------------------------------------------------
# Increasing rooted trimmed trees

@dataclass(frozen=True)
class Tree:
    """Rooted labeled tree; children are kept sorted by label."""

    label: int
    children: tuple[Tree, ...] = ()

    def __post_init__(self) -> None:
        labels = [c.label for c in self.children]
        if labels != sorted(labels):
            object.__setattr__(self, "children", tuple(sorted(self.children, key=lambda c: c.label)))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self) -> Iterator[Tree]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def __len__(self) -> int:
        return sum(1 for _ in self.nodes())

    def to_json(self) -> dict[str, Any]:
        return {"label": self.label, "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> Tree:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["label"]), tuple(cls.from_json(c) for c in data.get("children", [])))


def tree_violation(t: Tree) -> str | None:
    """Describe the first broken IRTT invariant, or None if ``t`` is an IRTT."""
    if t.label != 0:
        return f"root is labeled {t.label}, expected 0"
    labels = sorted(node.label for node in t.nodes())
    if labels != list(range(len(labels))):
        return f"labels {labels} are not exactly 0..{len(labels) - 1}"
    for node in t.nodes():
        for c in node.children:
            if c.label <= node.label:
                return f"node {c.label} is not larger than its parent {node.label}"
        if len(node.children) == 1 and node.children[0].is_leaf:
            return f"node {node.label} has a single leaf child {node.children[0].label}"
    return None


def is_irtt(t: Tree) -> bool:
    return tree_violation(t) is None


def _check_tree_domain(p: Sequence[int]) -> None:
    if not p:
        return
    occ = first_occurrence(p, CONSECUTIVE_132)
    if occ is not None:
        raise BijectionError(f"{p!r} contains 132 at positions {[i + 1 for i in occ]}")
    if len(p) < 2 or p[0] > p[1]:
        raise BijectionError(f"{p!r} does not begin with an ascent")


def _subtrees(word: Sequence[int]) -> tuple[Tree, ...]:
    out = []
    start = 0
    for a in right_to_left_minima(word):
        pos = word.index(a, start)
        out.append(Tree(a, _subtrees(word[start:pos])))
        start = pos + 1
    return tuple(out)


def perm_to_tree(p: Sequence[int]) -> Tree:
    """Children of each node are the right-to-left minima of its segment."""
    _check_tree_domain(p)
    return Tree(0, _subtrees(tuple(p)))


def _flatten(t: Tree) -> list[int]:
    out: list[int] = []
    for c in t.children:
        out.extend(_flatten(c))
        out.append(c.label)
    return out


def tree_to_perm(t: Tree) -> Permutation:
    """Inverse of :func:`perm_to_tree`.

    Each child is preceded by the word of its own subtree, which places the
    subtree of a_j between its smaller sibling a_i and a_j, and the subtree of
    a single child immediately to its left.
    """
    bad = tree_violation(t)
    if bad is not None:
        raise BijectionError(bad)
    return tuple(_flatten(t))


def increasing_trees(node_count: int) -> Iterator[Tree]:
    """Every increasing tree on labels 0..node_count-1 (parent arrays)."""
    if node_count < 1:
        return
    parent = [0] * node_count

    def build(label: int) -> Tree:
        kids = [c for c in range(label + 1, node_count) if parent[c] == label]
        return Tree(label, tuple(build(c) for c in kids))

    def choose(c: int) -> Iterator[Tree]:
        if c == node_count:
            yield build(0)
            return
        for q in range(c):
            parent[c] = q
            yield from choose(c + 1)

    yield from choose(1)


def _trimmed_parents(parent: Sequence[int], node_count: int) -> bool:
    child_count = [0] * node_count
    for c in range(1, node_count):
        child_count[parent[c]] += 1
    for v in range(node_count):
        if child_count[v] == 1:
            only = next(c for c in range(v + 1, node_count) if parent[c] == v)
            if child_count[only] == 0:
                return False
    return True


def count_irtt(node_count: int) -> int:
    """Count increasing rooted trimmed trees by exhaustive parent assignment."""
    if node_count < 1:
        raise DomainError(f"count_irtt needs node_count >= 1, got {node_count}")
    parent = [0] * node_count
    total = 0

    def choose(c: int) -> None:
        nonlocal total
        if c == node_count:
            total += _trimmed_parents(parent, node_count)
            return
        for q in range(c):
            parent[c] = q
            choose(c + 1)

    choose(1)
    return total
