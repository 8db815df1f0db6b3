"""Guessing numbers, information defects and network-coding solvability.

The package computes how much information can circulate through a
directed graph: configuration-graph construction and search, exact
guessing numbers and information defects, linear strategies over prime
fields, circulant digraphs generated by GF(2) polynomials, and
solvability of multiple-unicast network coding instances.
"""

from . import cyclic, digraph, gf_linear, guessing_graph, netcode, solvers
from .digraph import (
    Digraph,
    bidirectional_union,
    clique,
    clique_partition_number,
    complete_bipartite,
    cycle,
    cycle_power_ring,
    disjoint_union,
    from_edge_list,
    k_expand,
    mas_exact,
    path,
    standard,
    strong_components,
    strong_product,
    structure_report,
    unidirectional_union,
    union,
)
from .guessing_graph import GuessingGraph, degree_closed_form, materialize
from .solvers import (
    a_s_exact,
    alphabet_composition_bounds,
    bounds_report,
    chromatic_number,
    guessing_number,
    information_defect,
    max_independent_set,
    protocol_from_independent_set,
    fixed_configurations,
)
from .gf_linear import (
    GfMatrix,
    linear_guessing_number,
    linear_product_lower,
    parity_check_protocol,
    rank_gfp,
)
from .cyclic import (
    Gf2Poly,
    digraph_from_polynomial,
    divides_xn1,
    family_unidirectional,
    parse_poly,
    polynomial_digraph_report,
    simplex_digraph,
)
from .netcode import NetworkInstance, butterfly, bottleneck, from_digraph, solvable, to_guessing_digraph

__all__ = [name for name in dir() if not name.startswith("_")]
