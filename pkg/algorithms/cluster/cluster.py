"""
Граф пересечений шаров и проверки перколяционного пересечения

Граф строится через пространственную решетку ячеек со стороной не меньше
2r: смежные шары лежат в одной или соседних ячейках, поэтому пары
перебираются по половине окрестности (5 смещений) без дублей.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import pdist

from algorithms.geometry import AABB, Segment, balls_touching_segments
from algorithms.pointproc import PointSet

from .union_find import DisjointSet

logger = logging.getLogger(__name__)

# Половина окрестности ячейки: сама ячейка и 4 соседа
HALF_STENCIL = ((0, 0), (1, 0), (-1, 1), (0, 1), (1, 1))

# Порог точного O(n^2) вычисления диаметра компоненты
EXACT_DIAMETER_LIMIT = 4096


# Построение графа

def _candidate_pairs(points: np.ndarray, cell_side: float) -> Tuple[np.ndarray, np.ndarray]:
    """Пары индексов точек из одной или соседних ячеек решетки"""
    n = len(points)
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty

    origin = points.min(axis=0)
    cells = np.floor((points - origin) / cell_side).astype(np.int64)
    width = int(cells[:, 1].max()) + 3
    keys = (cells[:, 0] + 1) * width + (cells[:, 1] + 1)

    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    unique_keys, starts, counts = np.unique(sorted_keys, return_index=True, return_counts=True)

    left_parts = []
    right_parts = []
    for dx, dy in HALF_STENCIL:
        target = unique_keys + dx * width + dy
        pos = np.searchsorted(unique_keys, target)
        pos_clipped = np.minimum(pos, len(unique_keys) - 1)
        found = unique_keys[pos_clipped] == target
        if not np.any(found):
            continue

        a_start = starts[found]
        a_count = counts[found]
        b_start = starts[pos_clipped[found]]
        b_count = counts[pos_clipped[found]]

        per_cell = a_count * b_count
        total = int(per_cell.sum())
        if total == 0:
            continue
        cell_id = np.repeat(np.arange(len(per_cell)), per_cell)
        offsets = np.arange(total) - np.repeat(np.cumsum(per_cell) - per_cell, per_cell)
        ia = a_start[cell_id] + offsets // b_count[cell_id]
        ib = b_start[cell_id] + offsets % b_count[cell_id]
        if dx == 0 and dy == 0:
            keep = ia < ib
            ia, ib = ia[keep], ib[keep]
        left_parts.append(order[ia])
        right_parts.append(order[ib])

    if not left_parts:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(left_parts), np.concatenate(right_parts)


def adjacency_edges(points: np.ndarray, radius: float, cell_side: Optional[float] = None) -> np.ndarray:
    """
    Все пары (i, j), i < j, с |p_i - p_j|^2 <= (2r)^2

    Args:
        points: массив центров (n, 2)
        radius: радиус шаров
        cell_side: сторона ячейки решетки, не меньше 2r

    Returns:
        Массив ребер (m, 2), отсортированный лексикографически
    """
    if cell_side is None:
        cell_side = 2.0 * radius
    if cell_side < 2.0 * radius:
        raise ValueError(f"Сторона ячейки {cell_side} меньше диаметра шара {2.0 * radius}")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    ia, ib = _candidate_pairs(pts, cell_side)
    diff = pts[ia] - pts[ib]
    close = np.einsum("ij,ij->i", diff, diff) <= 4.0 * radius * radius
    edges = np.column_stack((np.minimum(ia, ib)[close], np.maximum(ia, ib)[close]))
    if len(edges):
        edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    return edges.reshape(-1, 2)


class IntersectionGraph:
    """
    Граф пересечений замкнутых шаров радиуса r с компонентами связности

    Узлы: точки PointSet (совпадающие шары считаются одним узлом).
    Ребро: расстояние между центрами не больше 2r.
    """

    def __init__(self, nodes: PointSet, cell_side: Optional[float] = None):
        self.nodes = nodes
        self.radius = nodes.radius
        self.cell_side = 2.0 * nodes.radius if cell_side is None else float(cell_side)
        self.edges = adjacency_edges(nodes.points, self.radius, self.cell_side)
        self.forest = DisjointSet(len(nodes))
        self.forest.union_pairs(self.edges)
        self._labels: Optional[np.ndarray] = None
        logger.debug(
            "Graph built: %d nodes, %d edges, %d components",
            len(nodes), len(self.edges), self.forest.count,
        )

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def component_count(self) -> int:
        return self.forest.count

    def labels(self) -> np.ndarray:
        """Корень компоненты для каждого узла"""
        if self._labels is None:
            self._labels = self.forest.roots()
        return self._labels

    def components(self) -> List[np.ndarray]:
        """Индексы узлов каждой компоненты, по убыванию размера"""
        labels = self.labels()
        if len(labels) == 0:
            return []
        order = np.argsort(labels, kind="stable")
        _, starts = np.unique(labels[order], return_index=True)
        groups = np.split(order, starts[1:])
        groups.sort(key=lambda g: (-len(g), int(g[0])))
        return groups

    def connects(self, source: np.ndarray, target: np.ndarray) -> bool:
        """Есть ли компонента, содержащая узел из source и узел из target (маски)"""
        labels = self.labels()
        if not np.any(source) or not np.any(target):
            return False
        return bool(np.intersect1d(labels[source], labels[target]).size)

    def largest_component(self) -> np.ndarray:
        comps = self.components()
        return comps[0] if comps else np.empty(0, dtype=np.int64)


def build_graph(points: PointSet, cell_side: Optional[float] = None) -> IntersectionGraph:
    """Граф пересечений шаров множества points"""
    return IntersectionGraph(points, cell_side)


# Пересечения

def crossing(
    points: PointSet,
    x1: Sequence[Segment],
    x2: Sequence[Segment],
    x3,
    cell_side: Optional[float] = None,
) -> bool:
    """
    Есть ли путь из шаров от X1 к X2 с центрами внутри X3

    Путь может состоять из одного шара, пересекающего и X1, и X2.

    Args:
        points: центры шаров
        x1: отрезки начального множества
        x2: отрезки конечного множества
        x3: замкнутая область (AABB, Hexagon, HexUnion)
        cell_side: сторона ячейки решетки графа

    Raises:
        ValueError: Если X1 или X2 пусты
    """
    if not x1 or not x2:
        raise ValueError("Множества X1 и X2 должны содержать хотя бы один отрезок")
    if len(points) == 0:
        return False
    inside = points.subset(x3.contains(points.points))
    if len(inside) == 0:
        return False
    graph = IntersectionGraph(inside, cell_side)
    touch1 = balls_touching_segments(inside.points, inside.radius, x1)
    touch2 = balls_touching_segments(inside.points, inside.radius, x2)
    return graph.connects(touch1, touch2)


def box_crossing(
    points: PointSet,
    box: AABB,
    direction: str = "horizontal",
    cell_side: Optional[float] = None,
) -> bool:
    """
    Пересечение прямоугольника: слева направо (horizontal) или снизу вверх (vertical)
    """
    sides = box.sides()
    if direction == "horizontal":
        x1, x2 = [sides["left"]], [sides["right"]]
    elif direction == "vertical":
        x1, x2 = [sides["bottom"]], [sides["top"]]
    else:
        raise ValueError(f"Неизвестное направление пересечения: {direction}")
    return crossing(points, x1, x2, box, cell_side)


# Статистика компонент

def _rotating_calipers(hull: np.ndarray) -> float:
    """Диаметр выпуклого многоугольника (вершины против часовой стрелки)"""
    m = len(hull)
    if m == 2:
        return float(np.linalg.norm(hull[1] - hull[0]))

    def area2(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    best = 0.0
    j = 1
    for i in range(m):
        ni = (i + 1) % m
        while area2(hull[i], hull[ni], hull[(j + 1) % m]) > area2(hull[i], hull[ni], hull[j]):
            j = (j + 1) % m
        for a in (hull[i], hull[ni]):
            d = a - hull[j]
            best = max(best, float(d @ d))
    return math.sqrt(best)


def point_set_diameter(points: np.ndarray) -> float:
    """
    Наибольшее попарное расстояние между точками

    До EXACT_DIAMETER_LIMIT точек считается перебором пар, иначе
    вращающимися калиперами на выпуклой оболочке.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        return 0.0
    if len(pts) <= EXACT_DIAMETER_LIMIT:
        return float(pdist(pts).max())
    try:
        hull = ConvexHull(pts)
    except QhullError:
        # точки на одной прямой
        far = pts[np.argmax(np.einsum("ij,ij->i", pts - pts[0], pts - pts[0]))]
        return float(np.sqrt(np.einsum("ij,ij->i", pts - far, pts - far).max()))
    return _rotating_calipers(pts[hull.vertices])


@dataclass
class ClusterStats:
    """Размеры и диаметры компонент (по убыванию размера)"""
    sizes: List[int]
    diameters: List[float]
    ball_counts: List[int] = field(default_factory=list)

    @property
    def component_count(self) -> int:
        return len(self.sizes)

    @property
    def largest_diameter(self) -> float:
        return max(self.diameters) if self.diameters else 0.0

    @property
    def largest_size(self) -> int:
        return self.sizes[0] if self.sizes else 0

    def to_dict(self) -> dict:
        return {
            'component_count': self.component_count,
            'sizes': self.sizes,
            'ball_counts': self.ball_counts,
            'diameters': self.diameters,
            'largest_diameter': self.largest_diameter,
        }


def component_stats(graph: IntersectionGraph, region=None) -> ClusterStats:
    """
    Размеры и диаметры компонент графа, ограниченного узлами внутри region

    Args:
        graph: построенный граф
        region: замкнутая область или None (весь граф)
    """
    if region is not None:
        mask = region.contains(graph.nodes.points) if len(graph) else np.zeros(0, dtype=bool)
        if not np.all(mask):
            graph = IntersectionGraph(graph.nodes.subset(mask), graph.cell_side)

    sizes: List[int] = []
    diameters: List[float] = []
    ball_counts: List[int] = []
    for members in graph.components():
        sizes.append(int(len(members)))
        diameters.append(point_set_diameter(graph.nodes.points[members]))
        ball_counts.append(int(graph.nodes.multiplicity[members].sum()))
    return ClusterStats(sizes=sizes, diameters=diameters, ball_counts=ball_counts)
