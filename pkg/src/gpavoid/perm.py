"""Permutations as one-line words, boundary runs and the trivial symmetries.

A permutation of length n is a tuple holding each of 1..n exactly once.
The empty tuple is the unique permutation of length 0.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Permutation = tuple[int, ...]

BEGIN = "begin"
END = "end"
INCREASING = "increasing"
DECREASING = "decreasing"


class Symmetry(str, enum.Enum):
    """Elements of the group {id, R, C, RC} acting on S_n."""

    IDENTITY = "id"
    REVERSE = "R"
    COMPLEMENT = "C"
    REVERSE_COMPLEMENT = "RC"

    def compose(self, other: Symmetry) -> Symmetry:
        """Return ``self ∘ other`` (apply ``other`` first)."""
        r = self.has_reverse ^ other.has_reverse
        c = self.has_complement ^ other.has_complement
        return _SYMMETRY_BY_FLAGS[(r, c)]

    @property
    def has_reverse(self) -> bool:
        return self in (Symmetry.REVERSE, Symmetry.REVERSE_COMPLEMENT)

    @property
    def has_complement(self) -> bool:
        return self in (Symmetry.COMPLEMENT, Symmetry.REVERSE_COMPLEMENT)


_SYMMETRY_BY_FLAGS = {
    (False, False): Symmetry.IDENTITY,
    (True, False): Symmetry.REVERSE,
    (False, True): Symmetry.COMPLEMENT,
    (True, True): Symmetry.REVERSE_COMPLEMENT,
}


@dataclass(frozen=True)
class BoundaryConstraint:
    """The first or last ``k`` letters form a monotone run.

    ``k == 1`` imposes nothing.
    """

    placement: str
    direction: str
    k: int

    def __post_init__(self) -> None:
        if self.placement not in (BEGIN, END):
            raise ValueError(f"placement must be 'begin' or 'end', got {self.placement!r}")
        if self.direction not in (INCREASING, DECREASING):
            raise ValueError(
                f"direction must be 'increasing' or 'decreasing', got {self.direction!r}"
            )
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"run length k must be a positive integer, got {self.k!r}")

    @property
    def flag(self) -> str:
        """Short form used by the command line, e.g. ``end-inc``."""
        return f"{self.placement}-{self.direction[:3]}"

    def __str__(self) -> str:
        return f"{self.flag}:{self.k}"

    @classmethod
    def from_flag(cls, flag: str, k: int) -> BoundaryConstraint:
        placement, _, short = flag.partition("-")
        direction = {"inc": INCREASING, "dec": DECREASING}.get(short)
        if direction is None:
            raise ValueError(f"unknown constraint flag {flag!r}")
        return cls(placement, direction, k)


def no_constraint() -> BoundaryConstraint:
    return BoundaryConstraint(BEGIN, INCREASING, 1)


def is_permutation(word: Sequence[int]) -> bool:
    return sorted(word) == list(range(1, len(word) + 1))


def as_permutation(word: Iterable[int]) -> Permutation:
    """Validate ``word`` and return it as a tuple."""
    p = tuple(word)
    if not is_permutation(p):
        raise ValueError(f"{p!r} is not a permutation of 1..{len(p)}")
    return p


_SEPARATORS = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Parse ``"5 4 1 2 3"``, ``"5,4,1,2,3"`` or, for n <= 9, ``"54123"``."""
    text = text.strip()
    if not text:
        return ()
    if _SEPARATORS.search(text):
        parts = [t for t in _SEPARATORS.split(text) if t]
    elif text.isdigit() and len(text) <= 9:
        parts = list(text)
    else:
        parts = [text]
    try:
        letters = [int(t) for t in parts]
    except ValueError:
        raise ValueError(f"cannot parse permutation from {text!r}") from None
    return as_permutation(letters)


def format_permutation(p: Sequence[int]) -> str:
    return " ".join(map(str, p))


def reverse(p: Sequence[int]) -> Permutation:
    return tuple(reversed(p))


def complement(p: Sequence[int]) -> Permutation:
    n1 = len(p) + 1
    return tuple(n1 - a for a in p)


def trivial_map(p: Sequence[int], s: Symmetry | str) -> Permutation:
    s = Symmetry(s)
    q = tuple(p)
    if s.has_complement:
        q = complement(q)
    if s.has_reverse:
        q = reverse(q)
    return q


def map_constraint(c: BoundaryConstraint, s: Symmetry | str) -> BoundaryConstraint:
    """Image of a boundary constraint under a symmetry.

    Reversal swaps both placement and direction, complement swaps direction.
    """
    s = Symmetry(s)
    placement, direction = c.placement, c.direction
    if s.has_reverse:
        placement = END if placement == BEGIN else BEGIN
    if s.has_reverse ^ s.has_complement:
        direction = DECREASING if direction == INCREASING else INCREASING
    return BoundaryConstraint(placement, direction, c.k)


def boundary_satisfies(p: Sequence[int], c: BoundaryConstraint) -> bool:
    k = c.k
    if k == 1:
        return True
    if len(p) < k:
        return False
    run = p[:k] if c.placement == BEGIN else p[len(p) - k:]
    if c.direction == INCREASING:
        return all(run[i] < run[i + 1] for i in range(k - 1))
    return all(run[i] > run[i + 1] for i in range(k - 1))


def right_to_left_minima(p: Sequence[int]) -> list[int]:
    """Letters smaller than everything to their right, in position order.

    The values increase from left to right and the first one is 1.
    """
    out = []
    current = None
    for a in reversed(p):
        if current is None or a < current:
            current = a
            out.append(a)
    out.reverse()
    return out


def standardize(word: Sequence[int]) -> Permutation:
    """Order-isomorphic permutation of 1..len(word) for distinct letters."""
    ranks = {a: i + 1 for i, a in enumerate(sorted(word))}
    return tuple(ranks[a] for a in word)
