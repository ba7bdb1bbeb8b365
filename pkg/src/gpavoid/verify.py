"""Batch verification suites behind ``gpavoid verify``.

Each suite is a generator of :class:`Check` records; :func:`run` stops at
the first failing check and reports it as the counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from . import counting, series, structures
from .counting import TABLE, CountQuery, brute_count, brute_enumerate, table_count
from .patterns import avoids, parse_pattern
from .perm import END, INCREASING, BoundaryConstraint, boundary_satisfies, no_constraint


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict[str, Any] = field(default_factory=dict)


def table_suite(n_max: int = 9, k_max: int = 4) -> Iterator[Check]:
    for row in TABLE:
        for k in range(1, k_max + 1):
            for n in range(n_max + 1):
                values = {m: table_count(row, k, n, m) for m in counting.METHODS}
                ok = len(set(values.values())) == 1
                yield Check("table", ok, {"row": row, "k": k, "n": n, **{m: str(v) for m, v in values.items()}})


def symmetry_suite(n_max: int = 8, k_max: int = 3) -> Iterator[Check]:
    for row, entry in TABLE.items():
        for k in range(1, k_max + 1):
            for n in range(n_max + 1):
                reference = brute_count(counting.representative_query(row, k, n))
                for pattern, placement, direction in entry.members[1:]:
                    q = CountQuery(parse_pattern(pattern), BoundaryConstraint(placement, direction, k), n)
                    got = brute_count(q)
                    yield Check(
                        "symmetry",
                        got == reference,
                        {"row": row, "pattern": pattern, "placement": placement, "direction": direction,
                         "k": k, "n": n, "count": str(got), "representative": str(reference)},
                    )


def stirling_suite(n_max: int = 9, k_max: int = 5) -> Iterator[Check]:
    pattern = structures.ONE_DASH_THREE_TWO
    for n in range(n_max + 1):
        for k in range(1, k_max + 1):
            brute = brute_count(CountQuery(pattern, BoundaryConstraint(END, INCREASING, k), n))
            if 1 <= k <= n:
                formula = structures.p_count_formula(n, k)
                yield Check("stirling", brute == formula, {"n": n, "k": k, "brute": str(brute), "formula": str(formula)})
            else:
                # outside the formula's domain the count itself must vanish (or be B_0 = 1)
                expected = 1 if (n == 0 and k == 1) else 0
                yield Check("stirling", brute == expected, {"n": n, "k": k, "brute": str(brute), "expected": str(expected)})
        if n >= 1:
            yield Check("stirling-bell", structures.p_count_formula(n, 1) == structures.bell(n), {"n": n})
        unconstrained = brute_count(CountQuery(pattern, no_constraint(), n))
        yield Check("bell-unconstrained", unconstrained == structures.bell(n), {"n": n, "brute": str(unconstrained)})


def identity_suite(n_max: int = 20, enumerate_max: int = 8) -> Iterator[Check]:
    for n in range(n_max + 1):
        left, right = structures.lemma2_sides(n)
        yield Check("identity", left == right, {"n": n, "left": str(left), "right": str(right)})
        if 1 <= n <= enumerate_max:
            size = sum(1 for _ in structures.marked_partitions(n))
            yield Check("identity-enumeration", size == right, {"n": n, "enumerated": size, "right": str(right)})


def bijection_suite(n_max: int = 8, k_values: tuple[int, ...] = (2, 3, 4)) -> Iterator[Check]:
    for k in k_values:
        target = BoundaryConstraint(END, INCREASING, k)
        for n in range(2, n_max + 1):
            images = set()
            valid = 0
            for pp in structures.marked_partitions(n - 1):
                if not structures.thm4_is_valid(pp, k):
                    continue
                valid += 1
                p = structures.partition_to_perm(pp, k)
                in_image = avoids(p, structures.ONE_DASH_THREE_TWO) and boundary_satisfies(p, target)
                back = structures.perm_to_partition(p, k) if in_image else None
                if not in_image or back != pp or p in images:
                    yield Check("partition-map", False, {"k": k, "n": n, "partition": pp.to_json(), "perm": list(p)})
                    return
                images.add(p)
            brute = brute_count(CountQuery(structures.ONE_DASH_THREE_TWO, target, n))
            yield Check("partition-count", valid == brute == len(images), {"k": k, "n": n, "partitions": valid, "brute": brute})
    yield from tree_suite(n_max)


def tree_suite(n_max: int = 9) -> Iterator[Check]:
    domain = parse_pattern("132")
    start = BoundaryConstraint("begin", INCREASING, 2)
    for n in range(1, n_max + 1):
        witnesses = list(brute_enumerate(CountQuery(domain, start, n)))
        for p in witnesses:
            t = structures.perm_to_tree(p)
            if not structures.is_irtt(t) or len(t) != n + 1 or structures.tree_to_perm(t) != p:
                yield Check("tree-map", False, {"n": n, "perm": list(p)})
                return
        trees = structures.count_irtt(n + 1)
        yield Check("tree-count", trees == len(witnesses), {"n": n, "trees": trees, "perms": len(witnesses)})


def erf_suite(k_max: int = 5, order: int = 20) -> Iterator[Check]:
    for k in range(2, max(k_max, 2) + 1):
        yield Check("erf", series.erf_equivalence(k, order), {"k": k, "order": order})


def ode_suite(k_max: int = 5, order: int = 20) -> Iterator[Check]:
    for k in range(2, max(k_max, 2) + 1):
        for name, residual in series.ode_residuals(k, order).items():
            yield Check("ode", residual.truncate(order - 1).is_zero(), {"equation": name, "k": k})


def purity_suite(k_max: int = 5, order: int = 20) -> Iterator[Check]:
    for row in TABLE:
        for k in range(1, k_max + 1):
            try:
                series.egf_table(row, k, order)
                ok, why = True, ""
            except series.SeriesConsistencyError as exc:
                ok, why = False, str(exc)
            yield Check("purity", ok, {"row": row, "k": k, "order": order, "error": why})


def vanishing_suite(n_max: int = 9, k_max: int = 5, order: int = 20) -> Iterator[Check]:
    for k in range(3, k_max + 1):
        yield Check("vanishing-series", series.egf_table(1, k, order).is_zero(), {"k": k})
        for n in range(n_max + 1):
            values = {m: table_count(1, k, n, m) for m in counting.METHODS}
            yield Check("vanishing", set(values.values()) == {0}, {"k": k, "n": n})


SCOPES = ("table", "symmetry", "stirling", "identity", "bijections", "erf", "ode", "purity", "vanishing")


def suites_for(scope: str, n_max: int | None, k_max: int | None) -> list[Callable[[], Iterator[Check]]]:
    def pick(default: int, value: int | None) -> int:
        return default if value is None else value

    table = {
        "table": lambda: table_suite(pick(9, n_max), pick(4, k_max)),
        "symmetry": lambda: symmetry_suite(pick(8, n_max), pick(3, k_max)),
        "stirling": lambda: stirling_suite(pick(9, n_max), pick(5, k_max)),
        "identity": lambda: identity_suite(pick(20, n_max)),
        "bijections": lambda: bijection_suite(pick(8, n_max), tuple(range(2, pick(4, k_max) + 1))),
        "erf": lambda: erf_suite(pick(5, k_max)),
        "ode": lambda: ode_suite(pick(5, k_max)),
        "purity": lambda: purity_suite(pick(5, k_max)),
        "vanishing": lambda: vanishing_suite(pick(9, n_max), pick(5, k_max)),
    }
    if scope == "all":
        return list(table.values())
    if scope not in table:
        raise ValueError(f"unknown scope {scope!r}")
    return [table[scope]]


def run(scope: str, n_max: int | None = None, k_max: int | None = None) -> dict[str, Any]:
    total = 0
    counts: dict[str, int] = {}
    for suite in suites_for(scope, n_max, k_max):
        for check in suite():
            total += 1
            counts[check.name] = counts.get(check.name, 0) + 1
            if not check.ok:
                return {"scope": scope, "passed": False, "checks": total, "by_kind": counts,
                        "counterexample": {"check": check.name, **check.detail}}
    return {"scope": scope, "passed": True, "checks": total, "by_kind": counts, "counterexample": None}
