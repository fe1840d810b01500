import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform

from algorithms.cluster import (
    EXACT_DIAMETER_LIMIT,
    adjacency_edges,
    box_crossing,
    build_graph,
    component_stats,
    crossing,
    point_set_diameter,
)
from algorithms.geometry import AABB, Segment, hex_pair
from algorithms.pointproc import PointSet, lattice_pointset
from algorithms.utils import RngStream


def _canonical(labels):
    first = {}
    return [first.setdefault(int(label), i) for i, label in enumerate(labels)]


def _oracle_labels(points, radius):
    adjacency = csr_matrix(squareform(pdist(points, "sqeuclidean")) <= 4 * radius * radius)
    return connected_components(adjacency, directed=False)[1]


centres = st.lists(st.tuples(st.floats(0.0, 6.0), st.floats(0.0, 6.0)), min_size=1, max_size=40)
radii = st.floats(0.05, 1.0)


# Граф пересечений

def test_tangent_chain_is_connected():
    points = PointSet(np.column_stack((np.arange(20, dtype=float), np.zeros(20))))
    assert build_graph(points).component_count == 1


def test_spaced_chain_is_disconnected():
    points = PointSet(np.column_stack((1.01 * np.arange(20), np.zeros(20))))
    assert build_graph(points).component_count == 20


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_components_match_oracle(seed):
    gen = RngStream(seed).generator()
    pts = gen.uniform(0.0, 10.0, (200, 2))
    graph = build_graph(PointSet(pts))
    assert _canonical(graph.labels()) == _canonical(_oracle_labels(pts, 0.5))


@pytest.mark.parametrize("radius", [0.3, 0.5, 1.2])
def test_edges_match_brute_force(radius):
    gen = RngStream(9).generator()
    pts = gen.uniform(-5.0, 5.0, (150, 2))
    edges = {tuple(e) for e in adjacency_edges(pts, radius).tolist()}
    dist = squareform(pdist(pts, "sqeuclidean"))
    brute = {(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts)) if dist[i, j] <= 4 * radius * radius}
    assert edges == brute


def test_cell_side_below_diameter():
    with pytest.raises(ValueError):
        adjacency_edges(np.zeros((3, 2)), 0.5, cell_side=0.9)


def test_components_sorted_by_size():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [10.0, 0.0], [20.0, 0.0], [21.0, 0.0]])
    comps = build_graph(PointSet(pts)).components()
    assert [len(c) for c in comps] == [3, 2, 1]


# Пересечения

def test_single_ball_crossing():
    box = AABB(0.0, 1.0, 0.0, 1.0)
    points = PointSet(np.array([[0.4, 0.5]]))
    left = [Segment.of((0.0, 0.0), (0.0, 1.0))]
    right = [Segment.of((0.8, 0.0), (0.8, 1.0))]
    assert crossing(points, left, right, box)


def test_boundary_node_is_inside():
    box = AABB(0.0, 0.5, 0.0, 1.0)
    points = PointSet(np.array([[0.0, 0.5]]))
    assert box_crossing(points, box)


def test_empty_points_do_not_cross():
    box = AABB.square(3.0)
    assert not box_crossing(PointSet(np.empty((0, 2))), box)


def test_crossing_requires_segments():
    box = AABB.square(3.0)
    with pytest.raises(ValueError):
        crossing(PointSet(np.array([[1.0, 1.0]])), [], [box.sides()["right"]], box)


def test_nodes_outside_region_ignored():
    box = AABB(0.0, 5.0, 0.0, 1.0)
    # мост через точку вне окна не засчитывается
    pts = np.array([[0.5, 0.5], [1.5, 0.5], [2.3, 1.05], [3.1, 0.5], [4.0, 0.5], [4.5, 0.5]])
    assert not box_crossing(PointSet(pts), box)
    pts[2] = [2.3, 0.95]
    assert box_crossing(PointSet(pts), box)


def test_box_crossing_lattice_tangency():
    box = AABB.square(10.0)
    assert box_crossing(lattice_pointset("triangular", box, 0.5), box, "horizontal")
    assert box_crossing(lattice_pointset("triangular", box, 0.5), box, "vertical")
    assert not box_crossing(lattice_pointset("triangular", box, 0.49), box)


def test_box_crossing_direction():
    with pytest.raises(ValueError):
        box_crossing(PointSet(np.array([[1.0, 1.0]])), AABB.square(2.0), "diagonal")


@pytest.mark.parametrize("side", [10.0, pytest.param(50.0, marks=pytest.mark.slow)])
def test_static_pair_crosses(side):
    pair = hex_pair(side)
    region = pair.union
    nodes = lattice_pointset("triangular", region.bounds().padded(1.0))
    assert crossing(nodes, [pair.edges["e3"]], [pair.edges["e3'"]], region)


# Свойства пересечения

@settings(deadline=None, max_examples=60)
@given(points=centres, radius=radii, grow=st.floats(0.0, 1.0))
def test_crossing_monotone_in_radius(points, radius, grow):
    box = AABB.square(6.0)
    pts = np.array(points)
    if box_crossing(PointSet(pts, radius), box):
        assert box_crossing(PointSet(pts, radius + grow), box)


@settings(deadline=None, max_examples=60)
@given(points=centres, more=centres, radius=radii)
def test_crossing_monotone_under_added_points(points, more, radius):
    box = AABB.square(6.0)
    pts = np.array(points)
    if box_crossing(PointSet(pts, radius), box):
        assert box_crossing(PointSet(np.concatenate((pts, np.array(more))), radius), box)


@settings(deadline=None, max_examples=60)
@given(points=centres, radius=radii, factor=st.floats(1.0, 4.0))
def test_cell_side_does_not_change_result(points, radius, factor):
    pts = np.array(points)
    cell_side = 2.0 * radius * factor
    assert np.array_equal(adjacency_edges(pts, radius), adjacency_edges(pts, radius, cell_side))

    box = AABB.square(6.0)
    sides = box.sides()
    for x1, x2 in (("left", "right"), ("bottom", "top")):
        expected = crossing(PointSet(pts, radius), [sides[x1]], [sides[x2]], box)
        assert crossing(PointSet(pts, radius), [sides[x1]], [sides[x2]], box, cell_side) == expected


# Статистика компонент

def test_stats_two_tangent_balls():
    stats = component_stats(build_graph(PointSet(np.array([[0.0, 0.0], [1.0, 0.0]]))))
    assert stats.sizes == [2]
    assert stats.largest_diameter == 1.0


def test_stats_singleton():
    stats = component_stats(build_graph(PointSet(np.array([[3.0, 3.0]]))))
    assert stats.sizes == [1]
    assert stats.diameters == [0.0]


def test_stats_multiplicity_and_region():
    points = PointSet(np.array([[0.0, 0.0], [1.0, 0.0], [5.0, 5.0]]), multiplicity=np.array([14, 1, 1]))
    stats = component_stats(build_graph(points))
    assert stats.ball_counts == [15, 1]
    inside = component_stats(build_graph(points), AABB.square(2.0, -1.0, -1.0))
    assert inside.sizes == [2]


def test_stats_match_oracle():
    gen = RngStream(11).generator()
    pts = gen.uniform(0.0, 6.0, (100, 2))
    graph = build_graph(PointSet(pts))
    stats = component_stats(graph)
    assert sum(stats.sizes) == 100
    for members, diameter in zip(graph.components(), stats.diameters):
        brute = float(pdist(pts[members]).max()) if len(members) > 1 else 0.0
        assert diameter == pytest.approx(brute, abs=1e-12)


def test_hull_diameter_large_set():
    gen = RngStream(12).generator()
    pts = gen.standard_normal((EXACT_DIAMETER_LIMIT + 1000, 2))
    brute = 0.0
    for start in range(0, len(pts), 512):
        d = pts[start:start + 512, None, :] - pts[None, :, :]
        brute = max(brute, float(np.sqrt(np.einsum("ijk,ijk->ij", d, d).max())))
    assert point_set_diameter(pts) == pytest.approx(brute, abs=1e-9)


def test_hull_diameter_collinear():
    xs = np.linspace(0.0, 7.0, EXACT_DIAMETER_LIMIT + 10)
    assert point_set_diameter(np.column_stack((xs, 2.0 * xs))) == pytest.approx(7.0 * np.sqrt(5.0))
