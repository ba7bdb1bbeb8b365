"""Generalized (vincular) permutation patterns.

A pattern such as ``1-32`` is a permutation word whose neighbouring letters
may be glued together: no dash between two letters means their images must
sit at consecutive positions of the host permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .perm import Symmetry


class PatternSyntaxError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"bad pattern {text!r} at position {position}: {reason}")


@dataclass(frozen=True)
class GeneralizedPattern:
    letters: tuple[int, ...]
    adjacency: tuple[bool, ...]

    def __post_init__(self) -> None:
        m = len(self.letters)
        if m < 1 or sorted(self.letters) != list(range(1, m + 1)):
            raise ValueError(f"pattern letters {self.letters!r} are not a permutation of 1..{m}")
        if len(self.adjacency) != m - 1:
            raise ValueError("adjacency must have one flag per gap")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        out = [str(self.letters[0])]
        for glued, a in zip(self.adjacency, self.letters[1:]):
            if not glued:
                out.append("-")
            out.append(str(a))
        return "".join(out)

    @property
    def is_consecutive(self) -> bool:
        """True when every pair of neighbours is glued (no dashes)."""
        return all(self.adjacency)

    @property
    def is_classical(self) -> bool:
        return not any(self.adjacency)

    def relaxed(self) -> GeneralizedPattern:
        """Same letters with every adjacency requirement dropped."""
        return GeneralizedPattern(self.letters, (False,) * len(self.adjacency))

    def glued(self) -> GeneralizedPattern:
        return GeneralizedPattern(self.letters, (True,) * len(self.adjacency))

    def apply(self, s: Symmetry | str) -> GeneralizedPattern:
        s = Symmetry(s)
        letters, adjacency = self.letters, self.adjacency
        if s.has_complement:
            m1 = len(letters) + 1
            letters = tuple(m1 - a for a in letters)
        if s.has_reverse:
            letters = letters[::-1]
            adjacency = adjacency[::-1]
        return GeneralizedPattern(letters, adjacency)


def parse_pattern(text: str) -> GeneralizedPattern:
    """Parse ``"1-32"`` style notation.

    A single leading or trailing dash is accepted and ignored.
    """
    body = text
    offset = 0
    if body.startswith("-"):
        body, offset = body[1:], 1
    if body.endswith("-"):
        body = body[:-1]
    if not body:
        raise PatternSyntaxError(text, 0, "empty pattern")
    letters: list[int] = []
    adjacency: list[bool] = []
    glued = True
    for i, ch in enumerate(body):
        pos = i + offset
        if ch == "-":
            if not letters or not glued:
                raise PatternSyntaxError(text, pos, "misplaced dash")
            glued = False
        elif ch in "123456789":
            a = int(ch)
            if a in letters:
                raise PatternSyntaxError(text, pos, f"repeated letter {a}")
            if letters:
                adjacency.append(glued)
            letters.append(a)
            glued = True
        else:
            raise PatternSyntaxError(text, pos, f"unexpected character {ch!r}")
    m = len(letters)
    if max(letters) != m:
        pos = offset + body.index(str(max(letters)))
        raise PatternSyntaxError(text, pos, f"letters are not a permutation of 1..{m}")
    return GeneralizedPattern(tuple(letters), tuple(adjacency))


def _search(
    word: Sequence[int], g: GeneralizedPattern, last_at_end: bool = False
) -> Iterator[tuple[int, ...]]:
    """Backtracking over position tuples, in lexicographic order.

    Each new position is checked against all earlier choices so that the
    partial subword stays order-isomorphic to the pattern prefix.
    """
    n, m = len(word), len(g)
    if n < m:
        return
    letters, adjacency = g.letters, g.adjacency
    chosen: list[int] = []

    def extend(j: int, start: int) -> Iterator[tuple[int, ...]]:
        if j == m:
            yield tuple(chosen)
            return
        if j > 0 and adjacency[j - 1]:
            candidates: Sequence[int] = (start,) if start < n else ()
        else:
            # leave room for the remaining m - j - 1 letters
            candidates = range(start, n - (m - j - 1))
        if last_at_end and j == m - 1:
            candidates = [i for i in candidates if i == n - 1]
        pj = letters[j]
        for i in candidates:
            a = word[i]
            ok = True
            for t, pos in enumerate(chosen):
                if (word[pos] < a) != (letters[t] < pj):
                    ok = False
                    break
            if ok:
                chosen.append(i)
                yield from extend(j + 1, i + 1)
                chosen.pop()

    yield from extend(0, 0)


def occurrences(p: Sequence[int], g: GeneralizedPattern) -> list[tuple[int, ...]]:
    """All occurrences as 0-based position tuples, lexicographically sorted."""
    return list(_search(p, g))


def contains(p: Sequence[int], g: GeneralizedPattern) -> bool:
    return next(_search(p, g), None) is not None


def avoids(p: Sequence[int], g: GeneralizedPattern) -> bool:
    return not contains(p, g)


def first_occurrence(p: Sequence[int], g: GeneralizedPattern) -> tuple[int, ...] | None:
    return next(_search(p, g), None)


def ends_with_occurrence(word: Sequence[int], g: GeneralizedPattern) -> bool:
    """Whether some occurrence uses the last position of ``word``.

    ``word`` need not be a permutation; only relative order matters. Every
    occurrence in a word shows up here at the moment its final letter is
    appended, which is what prefix pruning relies on.
    """
    if len(word) < len(g):
        return False
    if g.is_consecutive:
        m = len(g)
        window = word[len(word) - m:]
        letters = g.letters
        return all(
            (window[i] < window[j]) == (letters[i] < letters[j])
            for i in range(m)
            for j in range(i + 1, m)
        )
    return next(_search(word, g, last_at_end=True), None) is not None
