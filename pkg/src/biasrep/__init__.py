"""Biased graphs, gain graphs, their frame and lift matroids, and the
geometric representations that realize them over Q and GF(p)."""

from .biased import BiasedGraph, balance_closure, balanced_components, structural_predicates, validate_linear_class
from .errors import BiasRepError, CapExceeded, DomainError, InputError, LinearClassError
from .fields import PrimeField, Q, parse_field
from .gains import (
    GainGraph,
    example_I_5_8,
    gain_realizability_search,
    group_expansion,
    is_biased_expansion,
    is_subgroup_expansion,
    natural_projection,
    switch,
    to_biased,
)
from .graph import Graph, HalfEdge, Link, circles, complete_graph, cycle_graph, theta_subgraphs
from .groups import FieldAdditive, FieldMultiplicative, TableGroup, named_group, parse_group
from .linalg import Covector, LinearMatroid, ProjectivePoint, Vector, linear_rank_oracle
from .matroids import (
    E0,
    FrameMatroid,
    LiftMatroid,
    frame_circuits,
    frame_closure,
    frame_oracle,
    frame_rank,
    lift_circuits,
    lift_closure,
    lift_oracle,
    lift_rank,
)
from .oracle import RankOracle, rank_oracle_equal
from .representations import (
    affinographic_arrangement,
    cevian_hyperplanes,
    is_cross_closed,
    menelaean_points,
    orthographic_points,
    projectivize,
    reconstruct_affino,
    reconstruct_frame,
    reconstruct_ortho,
    standard_graphic_rep,
)

__version__ = "0.1.0"

__all__ = [
    "BiasedGraph",
    "balance_closure",
    "balanced_components",
    "structural_predicates",
    "validate_linear_class",
    "BiasRepError",
    "CapExceeded",
    "DomainError",
    "InputError",
    "LinearClassError",
    "PrimeField",
    "Q",
    "parse_field",
    "GainGraph",
    "example_I_5_8",
    "gain_realizability_search",
    "group_expansion",
    "is_biased_expansion",
    "is_subgroup_expansion",
    "natural_projection",
    "switch",
    "to_biased",
    "Graph",
    "HalfEdge",
    "Link",
    "circles",
    "complete_graph",
    "cycle_graph",
    "theta_subgraphs",
    "FieldAdditive",
    "FieldMultiplicative",
    "TableGroup",
    "named_group",
    "parse_group",
    "Covector",
    "LinearMatroid",
    "ProjectivePoint",
    "Vector",
    "linear_rank_oracle",
    "E0",
    "FrameMatroid",
    "LiftMatroid",
    "frame_circuits",
    "frame_closure",
    "frame_oracle",
    "frame_rank",
    "lift_circuits",
    "lift_closure",
    "lift_oracle",
    "lift_rank",
    "RankOracle",
    "rank_oracle_equal",
    "affinographic_arrangement",
    "cevian_hyperplanes",
    "is_cross_closed",
    "menelaean_points",
    "orthographic_points",
    "projectivize",
    "reconstruct_affino",
    "reconstruct_frame",
    "reconstruct_ortho",
    "standard_graphic_rep",
]
