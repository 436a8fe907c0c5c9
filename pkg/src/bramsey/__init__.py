"""Search and verification tools for 3-colour bipartite Ramsey numbers of
connected matchings, paths and even cycles."""

from .coloring import ABSENT, BlockSpec, Color, Coloring, Side, Vertex, delete_vertex, new_from_blocks, read_coloring, write_coloring
from .matching import (
    ComponentType,
    analyze,
    component_type,
    components,
    cover_vertices,
    largest_connected_matching,
    max_matching,
    meets_thresholds,
    min_vertex_cover,
)
from .search import Budget, Status, Thresholds, avoids, find_avoiding, ramsey_value, theorem8_formula

__version__ = "0.1.0"
