"""Bipartite graphs whose squares are not chromatic-choosable, with exact
verification and list-coloring tools."""

from .choosability import (
    ListAssignment,
    find_bad_assignment,
    is_l_colorable,
    list_chromatic_oracle,
)
from .construction import LabeledGraph, build_g, build_h, build_iterated, part_sets
from .graph import Graph, PartitionCertificate, make_graph, square, subdivide, total_graph
from .latin import LatinSquare, are_orthogonal, is_latin, mols_family
from .verify import gap_report, kierstead_value, vetrik_bound

__all__ = [
    "Graph", "LabeledGraph", "LatinSquare", "ListAssignment", "PartitionCertificate",
    "are_orthogonal", "build_g", "build_h", "build_iterated", "find_bad_assignment",
    "gap_report", "is_l_colorable", "is_latin", "kierstead_value", "list_chromatic_oracle",
    "make_graph", "mols_family", "part_sets", "square", "subdivide", "total_graph", "vetrik_bound",
]
