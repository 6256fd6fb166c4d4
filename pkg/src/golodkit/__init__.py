"""Minimal resolutions, transferred A-infinity structures and Golodness of monomial rings."""
from .core import (
    F2,
    QQ,
    Field,
    GolodkitError,
    IdealParseError,
    Monomial,
    MonomialIdeal,
    ResourceCapError,
    RingMismatchError,
    cl,
    load_ideal,
    parse_ideal,
)
from .complexes import BasedComplex, ModuleElement, TaylorComplex, is_minimal, taylor, tor_ranks
from .simplicial import SimplicialComplex, is_resolution, lcm_lattice, reduced_homology_ranks
from .morse import (
    ComposedReduction,
    Matching,
    MorseGraph,
    MorseReduction,
    build_graph,
    greedy_maximal_matching,
    is_standard_matching,
    jollenbeck_matching,
    reduce_to_minimal,
    validate_matching,
)
from .ainf import AInfStructure, MerkulovTransfer, is_minimal_map, verify_stasheff
from .golod import DecisionConfig, GolodReport, gcd_condition, golod_decision, lcm_condition, serre_bound_series

__version__ = "0.1.0"
