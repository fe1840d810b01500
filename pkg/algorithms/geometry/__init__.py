from .geometry import (
    AABB,
    HexPair,
    HexTessellation,
    HexUnion,
    Hexagon,
    Point,
    Segment,
    assert_no_nodes_on_edges,
    ball_intersects_segment,
    balls_adjacent,
    balls_touching_segments,
    hex_pair,
    point_in_region,
    segment_distance_sq,
    square_lattice_points,
    tri_lattice_points,
)

__all__ = [
    'AABB', 'HexPair', 'HexTessellation', 'HexUnion', 'Hexagon', 'Point', 'Segment',
    'assert_no_nodes_on_edges', 'ball_intersects_segment', 'balls_adjacent',
    'balls_touching_segments', 'hex_pair', 'point_in_region', 'segment_distance_sq',
    'square_lattice_points', 'tri_lattice_points',
]
