import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from algorithms.geometry import (
    AABB,
    HexTessellation,
    Hexagon,
    Point,
    Segment,
    ball_intersects_segment,
    balls_adjacent,
    hex_pair,
    point_in_region,
    segment_distance_sq,
    square_lattice_points,
    tri_lattice_points,
)

SQRT3 = math.sqrt(3.0)


def coords(lo=-20.0, hi=20.0):
    return st.floats(min_value=lo, max_value=hi, allow_nan=False, allow_infinity=False)


def _edge_key(segment):
    return frozenset((round(p.x, 9), round(p.y, 9)) for p in segment)


# Решетки

def test_tri_lattice_unit_window():
    pts = tri_lattice_points(AABB(0.0, 1.0, 0.0, 1.0))
    assert pts.shape == (2, 2)
    assert tuple(pts[0]) == (0.0, 0.0)
    assert pts[1][0] == 0.5
    assert pts[1][1] == pytest.approx(SQRT3 / 2)


def test_tri_lattice_count_100():
    pts = tri_lattice_points(AABB.square(100.0))
    assert len(pts) == 11600


def test_tri_lattice_sorted_by_y_then_x():
    pts = tri_lattice_points(AABB(-3.3, 7.1, -2.0, 5.5))
    order = np.lexsort((pts[:, 0], pts[:, 1]))
    assert np.array_equal(order, np.arange(len(pts)))


def test_tri_lattice_half_open():
    pts = tri_lattice_points(AABB(0.0, 2.0, 0.0, 1.0))
    assert not np.any(pts[:, 0] == 2.0)
    assert np.any(pts[:, 0] == 0.0)


def test_tri_lattice_density():
    side = 200.0
    pts = tri_lattice_points(AABB.square(side))
    assert len(pts) / side ** 2 == pytest.approx(2.0 / SQRT3, rel=1e-2)


def test_square_lattice_counts():
    assert len(square_lattice_points(AABB.square(2.0))) == 4
    assert len(square_lattice_points(AABB.square(100.0))) == 10000


def test_degenerate_window():
    with pytest.raises(ValueError):
        AABB(0.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        AABB(0.0, math.inf, 0.0, 1.0)


# Шестиугольники

def test_hexagon_closed():
    hexagon = Hexagon(Point(0.0, 0.0), 2.0)
    assert np.all(hexagon.contains(hexagon.vertices()))
    assert not point_in_region((2.01, 0.0), hexagon)
    assert hexagon.area == pytest.approx(1.5 * SQRT3 * 4.0)


def test_hexagon_invalid_side():
    with pytest.raises(ValueError):
        Hexagon(Point(0.0, 0.0), 0.0)


def test_tessellation_partition():
    tessellation = HexTessellation(1.7)
    gen = np.random.default_rng(7)
    pts = gen.uniform(-30.0, 30.0, (100000, 2))
    located = tessellation.locate(pts)

    hits = np.zeros(len(pts), dtype=np.int64)
    for dq, dr in [(0, 0)] + list(HexTessellation.neighbors(0, 0)):
        centers = tessellation.center_of(located[:, 0] + dq, located[:, 1] + dr)
        dx = np.abs(pts[:, 0] - centers[:, 0])
        dy = np.abs(pts[:, 1] - centers[:, 1])
        inside = (dy <= 0.5 * SQRT3 * 1.7) & (SQRT3 * dx + dy <= SQRT3 * 1.7)
        if (dq, dr) == (0, 0):
            assert np.all(inside)
        hits += inside
    assert np.all(hits == 1)


def test_cells_covering_area():
    tessellation = HexTessellation(1.0)
    window = AABB.square(60.0)
    cells = tessellation.cells_covering(window)
    centers = tessellation.center_of(cells[:, 0], cells[:, 1])
    assert np.all(window.contains(centers))
    assert len(cells) * tessellation.cell_area == pytest.approx(window.area, rel=0.05)


def test_locate_cell_roundtrip():
    tessellation = HexTessellation(3.0)
    for q, r in [(0, 0), (2, -1), (-4, 3), (5, 5)]:
        center = tessellation.cell(q, r).center
        assert tuple(tessellation.locate(np.array([center]))[0]) == (q, r)


# Пара шестиугольников

def test_hex_pair_shares_anchor():
    pair = hex_pair(50.0)
    anchor = HexTessellation(50.0).anchor
    assert _edge_key(pair.edges["e"]) == _edge_key(anchor)
    h1_edges = {_edge_key(s) for s in pair.h1.edges()}
    h2_edges = {_edge_key(s) for s in pair.h2.edges()}
    assert h1_edges & h2_edges == {_edge_key(anchor)}


def test_hex_pair_labels_cover_boundaries():
    pair = hex_pair(10.0)
    h1 = {_edge_key(pair.edges[k]) for k in ("e", "e1", "e2", "e3", "e4", "e5")}
    h2 = {_edge_key(pair.edges[k]) for k in ("e", "e1'", "e2'", "e3'", "e4'", "e5'")}
    assert h1 == {_edge_key(s) for s in pair.h1.edges()}
    assert h2 == {_edge_key(s) for s in pair.h2.edges()}


def test_hex_pair_opposite_edges():
    side = 50.0
    pair = hex_pair(side)
    base_y = pair.edges["e"].a.y
    apothem = 0.5 * SQRT3 * side
    e3, e3p = pair.edges["e3"], pair.edges["e3'"]
    assert e3.a.y == pytest.approx(base_y + 2 * apothem)
    assert e3.b.y == pytest.approx(base_y + 2 * apothem)
    assert e3p.a.y == pytest.approx(base_y - 2 * apothem)
    assert e3p.b.y == pytest.approx(base_y - 2 * apothem)


def test_hex_pair_no_nodes_on_edges():
    pair = hex_pair(50.0)
    nodes = tri_lattice_points(pair.union.bounds().padded(1.0))
    for segment in pair.edges.values():
        assert segment_distance_sq(nodes, segment).min() > 1e-6


# Предикаты

def test_adjacency_tie_counts():
    assert balls_adjacent((0.0, 0.0), (1.0, 0.0), 0.5)
    assert not balls_adjacent((0.0, 0.0), (1.0 + 1e-12, 0.0), 0.5)
    with pytest.raises(ValueError):
        balls_adjacent((0.0, 0.0), (1.0, 0.0), 0.0)


def test_degenerate_segment():
    with pytest.raises(ValueError):
        Segment.of((1.0, 1.0), (1.0, 1.0))


def test_ball_touches_segment_endpoint():
    s = Segment.of((0.0, 0.0), (1.0, 0.0))
    assert ball_intersects_segment((1.5, 0.0), 0.5, s)
    assert not ball_intersects_segment((1.5, 0.1), 0.5, s)


@settings(max_examples=300, deadline=None)
@given(coords(), coords(), coords(), coords(), coords(), coords(), st.floats(min_value=0.05, max_value=5.0))
def test_ball_segment_dense_oracle(ax, ay, bx, by, cx, cy, r):
    if (ax, ay) == (bx, by):
        return
    s = Segment.of((ax, ay), (bx, by))
    samples = np.linspace(0.0, 1.0, 1000)
    xs = ax + samples * (bx - ax)
    ys = ay + samples * (by - ay)
    nearest = float(np.sqrt(((xs - cx) ** 2 + (ys - cy) ** 2).min()))
    step = s.length / 999.0
    if ball_intersects_segment((cx, cy), r, s):
        assert nearest <= r + step
    else:
        assert nearest > r
