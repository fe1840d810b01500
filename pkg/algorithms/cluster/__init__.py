from .cluster import (
    EXACT_DIAMETER_LIMIT,
    ClusterStats,
    IntersectionGraph,
    adjacency_edges,
    box_crossing,
    build_graph,
    component_stats,
    crossing,
    point_set_diameter,
)
from .union_find import DisjointSet

__all__ = [
    'EXACT_DIAMETER_LIMIT', 'ClusterStats', 'DisjointSet', 'IntersectionGraph', 'adjacency_edges', 'box_crossing',
    'build_graph', 'component_stats', 'crossing', 'point_set_diameter',
]
