"""List coloring of K5-minor-free graphs with degree-bounded lists."""

from .graph import (
    Graph,
    check_coloring,
    component_distance,
    make_lists,
    small_big_split,
    validate_f_assignment,
)
from .gadgets import (
    GadgetInstance,
    GadgetMeta,
    audit,
    gen_complete_minus_clique,
    gen_fig1,
    gen_G_k5,
    gen_H_k5,
    gen_one_sum,
    gen_triangle_augmented,
)
from .instance_io import Instance, parse_document, parse_instance, write_instance
from .peel import (
    PeelTrace,
    classify_component_case,
    color_distance3,
    color_far_components,
    peel_color_3connected,
    peel_color_k8,
)
from .peelgen import PeelOptions, gen_peel_instance
from .solver import (
    SolveBudget,
    SolveResult,
    GallaiCertificate,
    Verdict,
    color_degree_choosable,
    solve_exact,
    uncolorability_certificate,
)
from .structure import (
    block_decomposition,
    classify_end_blocks,
    has_k5_minor,
    is_gallai_tree,
    small_vertex_cut,
    vertex_connectivity,
)

__all__ = [
    "GadgetInstance",
    "GadgetMeta",
    "Graph",
    "Instance",
    "PeelOptions",
    "PeelTrace",
    "audit",
    "classify_component_case",
    "color_distance3",
    "color_far_components",
    "gen_G_k5",
    "gen_H_k5",
    "gen_complete_minus_clique",
    "gen_fig1",
    "gen_one_sum",
    "gen_peel_instance",
    "gen_triangle_augmented",
    "parse_document",
    "parse_instance",
    "peel_color_3connected",
    "peel_color_k8",
    "small_vertex_cut",
    "write_instance",
    "SolveBudget",
    "SolveResult",
    "GallaiCertificate",
    "Verdict",
    "block_decomposition",
    "check_coloring",
    "classify_end_blocks",
    "color_degree_choosable",
    "component_distance",
    "has_k5_minor",
    "is_gallai_tree",
    "make_lists",
    "small_big_split",
    "solve_exact",
    "uncolorability_certificate",
    "validate_f_assignment",
    "vertex_connectivity",
]
