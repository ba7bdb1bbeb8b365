"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary."""

from gpavoid import series, verify
from gpavoid.counting import TABLE
from gpavoid.structures import (
    MarkedPartition,
    bell,
    is_irtt,
    p_count_formula,
    partition_to_perm,
    perm_to_partition,
    perm_to_tree,
    tree_to_perm,
)

TREE_WORD = (2, 9, 10, 5, 3, 1, 11, 13, 14, 8, 12, 7, 4, 6)
PARTITION_EXAMPLES = [
    ((((4,), (2, 3), (1,)), 1), (5, 4, 1, 2, 3)),
    ((((5,), (3, 4), (1, 2)), 1), (5, 3, 4, 6, 1, 2)),
    ((((5,), (2, 3, 4), (1,)), 2), (5, 2, 3, 4, 1, 6)),
]


def failures(checks):
    return [c for c in checks if not c.ok]


def gate(acceptance_report, number, description, bad):
    acceptance_report(number, description, not bad)
    assert not bad, bad[:3]


def test_criterion_01_table_agreement(acceptance_report):
    bad = failures(verify.table_suite(n_max=9, k_max=4))
    gate(acceptance_report, 1, "rows 1-6, k 1..4, n <= 9: brute = recurrence = series (exact)", bad)


def test_criterion_02_marked_partition_formula(acceptance_report):
    bad = failures(verify.stirling_suite(n_max=9, k_max=5))
    bad += [n for n in range(1, 10) if p_count_formula(n, 1) != bell(n)]
    gate(acceptance_report, 2, "1-32 end-inc counts = Stirling formula, n <= 9, k <= 5; k=1 gives Bell", bad)


def test_criterion_03_bell_stirling_identity(acceptance_report):
    bad = failures(verify.identity_suite(n_max=20, enumerate_max=8))
    gate(acceptance_report, 3, "identity holds for n <= 20; enumeration matches for n <= 8", bad)


def test_criterion_04_partition_bijection(acceptance_report):
    bad = [c for c in verify.bijection_suite(n_max=8, k_values=(2, 3, 4)) if c.name.startswith("partition") and not c.ok]
    for (blocks, marked), word in PARTITION_EXAMPLES:
        pp = MarkedPartition(blocks, marked)
        if partition_to_perm(pp, 2) != word or perm_to_partition(word, 2) != pp:
            bad.append(word)
    gate(acceptance_report, 4, "partition bijection, n <= 8, k 2..4, plus three worked examples", bad)


def test_criterion_05_tree_bijection(acceptance_report):
    bad = failures(verify.tree_suite(n_max=9))
    t = perm_to_tree(TREE_WORD)
    if not (len(t) == 15 and is_irtt(t) and [c.label for c in t.children] == [1, 4, 6]
            and tree_to_perm(t) == TREE_WORD):
        bad.append(TREE_WORD)
    gate(acceptance_report, 5, "trimmed-tree bijection, 1 <= n <= 9, plus the 15-node example", bad)


def test_criterion_06_row1_vanishing(acceptance_report):
    bad = failures(verify.vanishing_suite(n_max=9, k_max=5, order=20))
    gate(acceptance_report, 6, "row 1 is zero for k >= 3 by all methods (n <= 9) and as a series to order 20", bad)


def test_criterion_07_field_purity(acceptance_report):
    bad = failures(verify.purity_suite(k_max=5, order=20))
    gate(acceptance_report, 7, "every table series is rational with non-negative integer a_n, order 20, k <= 5", bad)


def test_criterion_08_erf_forms(acceptance_report):
    bad = [k for k in (2, 3, 4, 5) if not series.erf_equivalence(k, 20)]
    gate(acceptance_report, 8, "erf closed forms agree for k = 2..5 (even and odd branches)", bad)


def test_criterion_09_symmetry_classes(acceptance_report):
    checks = list(verify.symmetry_suite(n_max=8, k_max=3))
    covered = {(c.detail["pattern"], c.detail["placement"], c.detail["direction"]) for c in checks}
    bad = failures(checks)
    if len(covered) + len(TABLE) != 24:
        bad.append("coverage")
    gate(acceptance_report, 9, "all 24 triples match their row representative, n <= 8, k 1..3", bad)


def test_criterion_10_ode_residuals(acceptance_report):
    bad = failures(verify.ode_suite(k_max=5, order=20))
    gate(acceptance_report, 10, "all differential equations have zero residual to order 19, k = 2..5", bad)
