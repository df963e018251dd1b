"""Petri net synthesis from labeled transition systems, with repair search.

The pipeline: decide separation properties (`check_property`), turn a
witness into a net (`synthesized_net`), replay and compare (`reachability_graph`,
`verify_*`), and when a property fails, search for a smallest removal that
restores it (`min_removal`).  Hitting-set reductions provide hard benchmark
instances and an independent optimality oracle.
"""

from .lts import Lts, LtsError, is_word_in_language, lts_isomorphic, parse_lts, serialize_lts
from .regions import Region, RegionError, expand_region, is_region, path_support, render_region
from .separation import (
    FailureReport,
    SeparationError,
    Witness,
    check_property,
    enumerate_atoms,
    region_solves,
    seed_regions,
    solve_atom,
)
from .synthesis import (
    CapExceeded,
    PetriNet,
    SynthesisError,
    VerifyFailure,
    parse_net,
    reachability_graph,
    serialize_net,
    synthesized_net,
    verify_embedding,
    verify_language_simulation,
    verify_realization,
)
from .removal import (
    RemovalError,
    RemovalSet,
    apply_removal,
    induced_edges_removed,
    parse_removal,
    serialize_removal,
)
from .repair import (
    NoneWithinBudget,
    RepairError,
    RepairResult,
    greedy_upper_bound,
    min_removal,
)
from .reductions import (
    FAMILIES,
    HittingSetInstance,
    NoHittingSet,
    ReductionError,
    brute_force_min_hitting_set,
    generate_instance,
    hitting_set_from_removal,
    parse_hitting_set,
    removal_from_hitting_set,
    serialize_hitting_set,
)

__all__ = [
    "Lts", "LtsError", "parse_lts", "serialize_lts", "is_word_in_language", "lts_isomorphic",
    "Region", "RegionError", "expand_region", "is_region", "path_support", "render_region",
    "SeparationError", "Witness", "FailureReport", "check_property", "enumerate_atoms",
    "solve_atom", "region_solves", "seed_regions",
    "PetriNet", "SynthesisError", "CapExceeded", "VerifyFailure", "synthesized_net",
    "reachability_graph", "verify_embedding", "verify_language_simulation",
    "verify_realization", "parse_net", "serialize_net",
    "RemovalSet", "RemovalError", "apply_removal", "induced_edges_removed",
    "parse_removal", "serialize_removal",
    "RepairError", "RepairResult", "NoneWithinBudget", "min_removal", "greedy_upper_bound",
    "ReductionError", "NoHittingSet", "HittingSetInstance", "FAMILIES",
    "brute_force_min_hitting_set", "generate_instance", "removal_from_hitting_set",
    "hitting_set_from_removal", "parse_hitting_set", "serialize_hitting_set",
]

__version__ = "0.1.0"
