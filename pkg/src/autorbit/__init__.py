"""Graph automorphism groups, orbits of edge sets, exact symmetry-ratio
verification, uniform G(n, m) probabilities, and deck reconstruction tools."""

from .canon import automorphism_group, canonical_form, color_refine, is_isomorphic
from .ermodel import (
    SampleEstimate,
    count_labeled_copies,
    er_prob_isomorphic,
    estimate_prob_isomorphic,
    sample_er,
    verify_binomial_cancellation,
    verify_proof_chain,
)
from .errors import AutorbitError
from .graphs import (
    Graph,
    edge_set,
    emit_edge_list,
    emit_graph6,
    enumerate_labeled_graphs,
    from_edge_mask,
    new_graph,
    parse_edge_list,
    parse_graph6,
)
from .orbits import Orbit, edge_set_orbit, pair_orbit, vertex_orbit
from .perms import (
    Perm,
    PermGroup,
    apply_edge_set,
    apply_graph,
    apply_pair,
    brute_force_aut,
    compose,
    group_order,
    identity,
    inverse,
    is_automorphism,
    perm_group,
)
from .ratio import RatioReport, SweepSummary, sweep_verify, verify_ratio_identity
from .recon import (
    Card,
    Deck,
    augmented_deck,
    check_vertex_edge_orbit_identity,
    classic_deck,
    kelly_edge_count,
    recover_aut_order,
    unique_extension_filter,
    vertex_deleted,
)

__version__ = "0.1.0"

__all__ = [
    "AutorbitError",
    "Card",
    "Deck",
    "Graph",
    "Orbit",
    "Perm",
    "PermGroup",
    "RatioReport",
    "SampleEstimate",
    "SweepSummary",
    "apply_edge_set",
    "apply_graph",
    "apply_pair",
    "augmented_deck",
    "automorphism_group",
    "brute_force_aut",
    "canonical_form",
    "check_vertex_edge_orbit_identity",
    "classic_deck",
    "color_refine",
    "compose",
    "count_labeled_copies",
    "edge_set",
    "edge_set_orbit",
    "emit_edge_list",
    "emit_graph6",
    "enumerate_labeled_graphs",
    "er_prob_isomorphic",
    "estimate_prob_isomorphic",
    "from_edge_mask",
    "group_order",
    "identity",
    "inverse",
    "is_automorphism",
    "is_isomorphic",
    "kelly_edge_count",
    "new_graph",
    "pair_orbit",
    "parse_edge_list",
    "parse_graph6",
    "perm_group",
    "recover_aut_order",
    "sample_er",
    "sweep_verify",
    "unique_extension_filter",
    "verify_binomial_cancellation",
    "verify_proof_chain",
    "verify_ratio_identity",
    "vertex_deleted",
    "vertex_orbit",
]
