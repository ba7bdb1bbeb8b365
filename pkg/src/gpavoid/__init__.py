"""Exact counting of permutations avoiding a generalized 3-pattern under
begin/end run constraints, with the associated bijections and EGFs."""

from .counting import CountQuery, brute_count, brute_enumerate, classify, table_count
from .patterns import GeneralizedPattern, avoids, occurrences, parse_pattern
from .perm import BoundaryConstraint, Symmetry, boundary_satisfies, right_to_left_minima, trivial_map
from .series import PowerSeries, egf_coefficient, egf_table, erf_equivalence
from .structures import (
    MarkedPartition,
    Tree,
    bell,
    count_irtt,
    lemma2_sides,
    marked_partitions,
    p_count_formula,
    partition_to_perm,
    perm_to_partition,
    perm_to_tree,
    stirling2,
    tree_to_perm,
)

__version__ = "0.1.0"
