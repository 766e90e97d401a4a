"""Exact optimization over weighted tournaments.

Core objects: weighted tournaments with antisymmetric rational arc weights,
ordered vertex partitions scored by net downward arc weight, the orthogonal
cyclic/acyclic weight decomposition, exact solvers for the maximal ordered
k-partition problem, weak-order profiles with the (j, k) aggregation family,
and the cut-instance gadget constructions relating cuts to partitions.
"""

from .decomposition import (
    Decomposition,
    basic_cocycle,
    basic_cycle,
    cocycle_component,
    cycle_component,
    decompose,
    inner_product,
    is_purely_acyclic,
    is_purely_cyclic,
    norm_squared,
)
from .profiles import (
    LINEAR,
    NAMED_RULES,
    UNIVALENT,
    AggregateResult,
    Profile,
    WeakOrder,
    aggregate,
    borda_mean_rule,
    induce_tournament,
    jk_kemeny,
    mean_rule,
    named_rule,
    realize_weights,
    validate_ballots,
)
from .reductions import (
    CutInstance,
    GadgetMap,
    add_club_vertex,
    build_fg,
    build_hg,
    check_club_identity,
    check_transitive_gadget,
    check_tricut_identity,
    cut_score,
    lift_bipartition_fg,
    lift_partition_hg,
    lift_tripartition_hg,
    project_fg_partition,
    project_partition_hg,
    project_tripartition_hg,
    round_nearest,
    solve_cut_bruteforce,
)
from .solvers import (
    DEFAULT_GUARD,
    DEFAULT_WITNESS_CAP,
    GuardExceededError,
    SolveResult,
    decide,
    solve,
    solve_2op,
    solve_acyclic_dp,
    solve_bruteforce,
)
from .tournament import (
    OrderedPartition,
    WeightedTournament,
    borda_score,
    difference_generator,
    is_qualitatively_transitive,
    is_quantitatively_transitive,
    partition_score,
    weight,
)

__all__ = [
    "AggregateResult",
    "CutInstance",
    "DEFAULT_GUARD",
    "DEFAULT_WITNESS_CAP",
    "Decomposition",
    "GadgetMap",
    "GuardExceededError",
    "LINEAR",
    "NAMED_RULES",
    "OrderedPartition",
    "Profile",
    "SolveResult",
    "UNIVALENT",
    "WeakOrder",
    "WeightedTournament",
    "add_club_vertex",
    "aggregate",
    "basic_cocycle",
    "basic_cycle",
    "borda_mean_rule",
    "borda_score",
    "build_fg",
    "build_hg",
    "check_club_identity",
    "check_transitive_gadget",
    "check_tricut_identity",
    "cocycle_component",
    "cut_score",
    "cycle_component",
    "decide",
    "decompose",
    "difference_generator",
    "induce_tournament",
    "inner_product",
    "is_purely_acyclic",
    "is_purely_cyclic",
    "is_qualitatively_transitive",
    "is_quantitatively_transitive",
    "jk_kemeny",
    "lift_bipartition_fg",
    "lift_partition_hg",
    "lift_tripartition_hg",
    "mean_rule",
    "named_rule",
    "norm_squared",
    "partition_score",
    "project_fg_partition",
    "project_partition_hg",
    "project_tripartition_hg",
    "realize_weights",
    "round_nearest",
    "solve",
    "solve_2op",
    "solve_acyclic_dp",
    "solve_bruteforce",
    "solve_cut_bruteforce",
    "validate_ballots",
    "weight",
]
