"""Three independent ways to count constrained pattern avoiders.

* exhaustive generation with prefix pruning (the ground truth),
* the coefficient recurrences for the 132, 123 and 213 families,
* coefficients of the closed-form EGFs (see :mod:`gpavoid.series`).

The 24 (pattern, placement, direction) triples for consecutive 3-patterns
fall into six classes under reverse/complement; each class is computed via a
single representative.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from types import MappingProxyType
from typing import Iterator, Mapping

from .patterns import GeneralizedPattern, ends_with_occurrence, parse_pattern
from .perm import (
    BEGIN,
    DECREASING,
    END,
    INCREASING,
    BoundaryConstraint,
    Permutation,
    Symmetry,
    map_constraint,
)
from .series import DEFAULT_ORDER, egf_coefficient, egf_table

DEFAULT_BRUTE_CAP = 10
BRUTE_CAP_ENV = "GPAVOID_BRUTE_CAP"


class BruteForceCapError(ValueError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"n = {n} exceeds the brute-force cap {cap} (set {BRUTE_CAP_ENV} to raise it)")


class NotClassifiableError(ValueError):
    pass


def brute_cap() -> int:
    value = os.environ.get(BRUTE_CAP_ENV)
    return int(value) if value else DEFAULT_BRUTE_CAP


@dataclass(frozen=True)
class CountQuery:
    avoided: GeneralizedPattern
    constraint: BoundaryConstraint
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"length must be non-negative, got {self.n}")


# ---------------------------------------------------------------------------
# Exhaustive enumeration

def brute_enumerate(q: CountQuery, cap: int | None = None) -> Iterator[Permutation]:
    """Witnesses in lexicographic order.

    Letters are placed left to right. A prefix is abandoned as soon as it
    contains an occurrence (checked only for occurrences ending at the new
    letter) or breaks the boundary run.
    """
    cap = brute_cap() if cap is None else cap
    n = q.n
    if n > cap:
        raise BruteForceCapError(n, cap)
    g = q.avoided
    k = q.constraint.k
    if k > 1 and n < k:
        return
    increasing = q.constraint.direction == INCREASING
    # positions j (0-based) where p[j-1] vs p[j] is constrained
    if k == 1:
        run = range(0)
    elif q.constraint.placement == BEGIN:
        run = range(1, k)
    else:
        run = range(n - k + 1, n)
    run_set = frozenset(run)

    word: list[int] = []
    used = [False] * (n + 1)

    def extend() -> Iterator[Permutation]:
        j = len(word)
        if j == n:
            yield tuple(word)
            return
        for a in range(1, n + 1):
            if used[a]:
                continue
            if j in run_set and (word[-1] < a) != increasing:
                continue
            word.append(a)
            if not ends_with_occurrence(word, g):
                used[a] = True
                yield from extend()
                used[a] = False
            word.pop()

    yield from extend()


def brute_count(q: CountQuery, cap: int | None = None) -> int:
    return sum(1 for _ in brute_enumerate(q, cap))


# ---------------------------------------------------------------------------
# Recurrence tables

@dataclass(frozen=True)
class RecurrenceTable:
    """Sealed table of exact counts keyed by (role, n, k)."""

    family: str
    n_max: int
    k_max: int
    entries: Mapping[tuple[str, int, int], int] = field(repr=False)

    def get(self, role: str, n: int, k: int) -> int:
        try:
            return self.entries[(role, n, k)]
        except KeyError:
            raise KeyError(f"{self.family} table has no entry {role}[n={n}, k={k}]") from None

    def sequence(self, role: str, k: int) -> list[int]:
        return [self.get(role, n, k) for n in range(self.n_max + 1)]


def _seal(family: str, n_max: int, k_max: int, entries: dict[tuple[str, int, int], int]) -> RecurrenceTable:
    return RecurrenceTable(family, n_max, k_max, MappingProxyType(dict(entries)))


def _conv(n: int, left: list[int], right: list[int]) -> int:
    """sum_i C(n, i) left[i] right[n - i]"""
    return sum(comb(n, i) * left[i] * right[n - i] for i in range(n + 1))


def _decreasing_start(n: int, k: int, own: list[int], e2: list[int]) -> int:
    """Count for length n+1 in the 'begin with k...21' recurrence.

    ``own`` holds the values for lengths <= n, ``e2`` the companion
    'begin with an ascent' (or descent, for 123) sequence.  The last two
    terms repair the n = k-1 and n = k cases where 1 sits at position k.
    """
    total = own[n] + (n * own[n - 1] if n >= 1 else 0) + _conv(n, own, e2)
    if n >= k - 1:
        total += comb(n, k - 1) * e2[n - k + 1]
    if n == k - 1:
        total += 1
    if n == k:
        total += n
    return total


@lru_cache(maxsize=None)
def build_f132(n_max: int, k_max: int) -> RecurrenceTable:
    """E[n,k]: avoid 132, begin 12...k.  R[n,k]: avoid 132, begin k...21."""
    k_max = max(k_max, 2)
    e1 = [1]
    e2 = [0]
    r2 = [0]
    for n in range(n_max):
        e1.append(_conv(n, e2, e1) + (n * e1[n - 1] if n >= 1 else 0) + e1[n])
        r2.append(_decreasing_start(n, 2, r2, e2))
        e2.append(e1[n + 1] - r2[n + 1] if n + 1 >= 2 else 0)
    e = {1: e1, 2: e2}
    r = {2: r2}
    for k in range(3, k_max + 1):
        ek = [0]
        rk = [0]
        for n in range(n_max):
            ek.append(e[k - 1][n] + _conv(n, ek, e2) + (n * ek[n - 1] if n >= 1 else 0) + ek[n])
            rk.append(_decreasing_start(n, k, rk, e2))
        e[k] = ek
        r[k] = rk
    entries: dict[tuple[str, int, int], int] = {}
    for k, seq in e.items():
        entries.update((("E", n, k), v) for n, v in enumerate(seq))
    for k, seq in r.items():
        entries.update((("R", n, k), v) for n, v in enumerate(seq))
    return _seal("F132", n_max, k_max, entries)


@lru_cache(maxsize=None)
def build_f123(n_max: int, k_max: int) -> RecurrenceTable:
    """P[n,k]: avoid 123, begin k...21 (P[n,1] unrestricted).  P12[n,k]: begin 12...k."""
    k_max = max(k_max, 2)
    p = {}
    p2 = [0]
    for n in range(n_max):
        p2.append(_decreasing_start(n, 2, p2, p2))
    p[2] = p2
    p1 = [1]
    for n in range(n_max):
        p1.append(p1[n] + (n * p1[n - 1] if n >= 1 else 0) + _conv(n, p2, p1))
    p[1] = p1
    for k in range(3, k_max + 1):
        pk = [0]
        for n in range(n_max):
            pk.append(_decreasing_start(n, k, pk, p2))
        p[k] = pk
    entries: dict[tuple[str, int, int], int] = {}
    for k, seq in p.items():
        entries.update((("P", n, k), v) for n, v in enumerate(seq))
    for n in range(n_max + 1):
        entries[("P12", n, 1)] = p1[n]
        entries[("P12", n, 2)] = p1[n] - p2[n] if n >= 2 else 0
        for k in range(3, k_max + 1):
            entries[("P12", n, k)] = 0
    return _seal("F123", n_max, k_max, entries)


@lru_cache(maxsize=None)
def build_f213(n_max: int, k_max: int) -> RecurrenceTable:
    """Avoid 213 with a begin constraint.

    A = all avoiders, D = avoiders ending with 12 (both imported from the 132
    table through reverse-complement).  B_inc/C_inc are the begin-12...k
    counts without / with an ending ascent; B_dec/C_dec the same for k...21.
    """
    k_max = max(k_max, 2)
    f132 = build_f132(n_max, 2)
    a = f132.sequence("E", 1)
    d = f132.sequence("E", 2)
    entries: dict[tuple[str, int, int], int] = {}
    for n in range(n_max + 1):
        entries[("A", n, 1)] = a[n]
        entries[("D", n, 2)] = d[n]
        entries[("B_inc", n, 1)] = a[n]
        entries[("B_dec", n, 1)] = a[n]
        entries[("C_dec", n, 1)] = d[n]

    for k in range(2, k_max + 1):
        c = [0]
        b = [0]
        for n in range(n_max):
            tail = comb(n, k - 1) if n >= k - 1 else 0
            c_next = _conv(n, c, d) + tail * (d[n - k + 1] if n >= k - 1 else 0) + c[n]
            if n == k - 1:
                c_next += 1
            c.append(c_next)
            b.append(_conv(n, c, a) + tail * (a[n - k + 1] if n >= k - 1 else 0))
        entries.update((("C_inc", n, k), v) for n, v in enumerate(c))
        entries.update((("B_inc", n, k), v) for n, v in enumerate(b))

    c_prev = d
    b_prev = a
    for k in range(2, k_max + 1):
        c = [0]
        b = [0]
        for n in range(n_max):
            c.append(_conv(n, c, d) + c_prev[n] + c[n])
            gamma = 1 if (n == 0 and k == 2) else 0
            b.append(_conv(n, c, a) + b_prev[n] - gamma)
        entries.update((("C_dec", n, k), v) for n, v in enumerate(c))
        entries.update((("B_dec", n, k), v) for n, v in enumerate(b))
        c_prev, b_prev = c, b
    return _seal("F213", n_max, k_max, entries)


# ---------------------------------------------------------------------------
# Table rows and classification

@dataclass(frozen=True)
class TableRow:
    row: int
    members: tuple[tuple[str, str, str], ...]

    @property
    def representative(self) -> tuple[str, str, str]:
        return self.members[0]


def _members(*triples: str) -> tuple[tuple[str, str, str], ...]:
    out = []
    for t in triples:
        pattern, placement, direction = t.split()
        out.append((pattern, placement, direction))
    return tuple(out)


TABLE: dict[int, TableRow] = {
    1: TableRow(1, _members("123 begin increasing", "123 end increasing", "321 begin decreasing", "321 end decreasing")),
    2: TableRow(2, _members("123 begin decreasing", "123 end decreasing", "321 begin increasing", "321 end increasing")),
    3: TableRow(3, _members("132 begin increasing", "213 end increasing", "312 begin decreasing", "231 end decreasing")),
    4: TableRow(4, _members("132 begin decreasing", "213 end decreasing", "312 begin increasing", "231 end increasing")),
    5: TableRow(5, _members("213 begin increasing", "132 end increasing", "231 begin decreasing", "312 end decreasing")),
    6: TableRow(6, _members("213 begin decreasing", "132 end decreasing", "231 begin increasing", "312 end increasing")),
}

_ROW_OF = {m: r.row for r in TABLE.values() for m in r.members}


def classify(avoided: GeneralizedPattern, c: BoundaryConstraint) -> tuple[int, Symmetry]:
    """Row of the summary table and the symmetry onto its representative."""
    if len(avoided) != 3 or not avoided.is_consecutive:
        raise NotClassifiableError(f"only consecutive 3-letter patterns are tabulated, got {avoided}")
    key = ("".join(map(str, avoided.letters)), c.placement, c.direction)
    row = _ROW_OF[key]
    rep = TABLE[row].representative
    for s in Symmetry:
        pat = avoided.apply(s)
        con = map_constraint(c, s)
        if ("".join(map(str, pat.letters)), con.placement, con.direction) == rep:
            return row, s
    raise AssertionError(f"row {row} is not closed under symmetries")


def representative_query(row: int, k: int, n: int) -> CountQuery:
    pattern, placement, direction = TABLE[row].representative
    return CountQuery(parse_pattern(pattern), BoundaryConstraint(placement, direction, k), n)


def recurrence_count(row: int, k: int, n: int) -> int:
    if row in (1, 2):
        t = build_f123(n, max(k, 2))
        if row == 1:
            return t.get("P12", n, k)
        return t.get("P", n, k)
    if row in (3, 4):
        t = build_f132(n, max(k, 2))
        if row == 3 or k == 1:
            return t.get("E", n, k)
        return t.get("R", n, k)
    t = build_f213(n, max(k, 2))
    return t.get("B_inc" if row == 5 else "B_dec", n, k)


@lru_cache(maxsize=None)
def _series(row: int, k: int, order: int):
    return egf_table(row, k, order)


def series_count(row: int, k: int, n: int, order: int = DEFAULT_ORDER) -> int:
    if n > order:
        raise ValueError(f"n = {n} exceeds the series truncation order {order}")
    a = egf_coefficient(_series(row, k, max(order, k)), n)
    return int(a)


METHODS = ("brute", "recurrence", "series")


def table_count(row: int, k: int, n: int, method: str = "recurrence", *, order: int = DEFAULT_ORDER, cap: int | None = None) -> int:
    if row not in TABLE:
        raise ValueError(f"row must be in 1..6, got {row}")
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    if method == "brute":
        return brute_count(representative_query(row, k, n), cap)
    if method == "recurrence":
        return recurrence_count(row, k, n)
    if method == "series":
        return series_count(row, k, n, order)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def count(q: CountQuery, method: str = "recurrence", *, order: int = DEFAULT_ORDER, cap: int | None = None) -> int:
    """Count any query; non-brute methods go through :func:`classify`."""
    if method == "brute":
        return brute_count(q, cap)
    row, _ = classify(q.avoided, q.constraint)
    return table_count(row, q.constraint.k, q.n, method, order=order, cap=cap)
