"""
Планарные примитивы: треугольная и квадратная решетки, гексагональные
разбиения с опорным ребром, пара смежных шестиугольников с разметкой ребер,
предикаты шар-шар и шар-отрезок

Все области замкнутые. Окна перечисления решеток полуоткрыты по верхним
границам, чтобы соседние окна не дублировали узлы.
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from algorithms.utils import SQRT3

from .consts import (
    ANCHOR_START,
    AXIAL_NEIGHBORS,
    H1_CLOCKWISE,
    H1_LABELS,
    H2_CLOCKWISE,
    H2_LABELS,
    MEMBERSHIP_RTOL,
    NODE_ON_EDGE_TOLERANCE,
    TRI_ROW_HEIGHT,
)


# Структуры данных

class Point(NamedTuple):
    """Точка плоскости"""
    x: float
    y: float


class Segment(NamedTuple):
    """Замкнутый отрезок [a, b]"""
    a: Point
    b: Point

    @classmethod
    def of(cls, a: Sequence[float], b: Sequence[float]) -> "Segment":
        pa, pb = Point(float(a[0]), float(a[1])), Point(float(b[0]), float(b[1]))
        if pa == pb:
            raise ValueError(f"Вырожденный отрезок: {pa} == {pb}")
        return cls(pa, pb)

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


@dataclass(frozen=True)
class AABB:
    """Прямоугольное окно [xmin, xmax] x [ymin, ymax]"""
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        values = (self.xmin, self.xmax, self.ymin, self.ymax)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"Окно должно быть конечным: {values}")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"Вырожденное окно: {values}")

    @classmethod
    def square(cls, side: float, x0: float = 0.0, y0: float = 0.0) -> "AABB":
        return cls(x0, x0 + side, y0, y0 + side)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def area(self) -> float:
        return self.width * self.height

    def padded(self, margin: float) -> "AABB":
        return AABB(self.xmin - margin, self.xmax + margin, self.ymin - margin, self.ymax + margin)

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        return (
            (pts[:, 0] >= self.xmin) & (pts[:, 0] <= self.xmax)
            & (pts[:, 1] >= self.ymin) & (pts[:, 1] <= self.ymax)
        )

    def bounds(self) -> "AABB":
        return self

    def sides(self) -> Dict[str, Segment]:
        """Стороны окна: left, right, bottom, top"""
        return {
            "left": Segment.of((self.xmin, self.ymin), (self.xmin, self.ymax)),
            "right": Segment.of((self.xmax, self.ymin), (self.xmax, self.ymax)),
            "bottom": Segment.of((self.xmin, self.ymin), (self.xmax, self.ymin)),
            "top": Segment.of((self.xmin, self.ymax), (self.xmax, self.ymax)),
        }


@dataclass(frozen=True)
class Hexagon:
    """
    Правильный шестиугольник с плоской вершиной (две горизонтальные стороны)

    Вершины V_k = center + side * (cos 60k, sin 60k), k = 0..5,
    ребро k соединяет V_k и V_{k+1}.
    """
    center: Point
    side: float

    def __post_init__(self):
        if not self.side > 0:
            raise ValueError(f"Сторона шестиугольника должна быть положительной: {self.side}")

    @property
    def area(self) -> float:
        return 1.5 * SQRT3 * self.side ** 2

    @property
    def apothem(self) -> float:
        return 0.5 * SQRT3 * self.side

    def vertices(self) -> np.ndarray:
        angles = np.arange(6) * (math.pi / 3.0)
        return np.column_stack((
            self.center.x + self.side * np.cos(angles),
            self.center.y + self.side * np.sin(angles),
        ))

    def vertex(self, k: int) -> Point:
        angle = (k % 6) * math.pi / 3.0
        return Point(self.center.x + self.side * math.cos(angle), self.center.y + self.side * math.sin(angle))

    def edges(self) -> List[Segment]:
        return [Segment(self.vertex(k), self.vertex(k + 1)) for k in range(6)]

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Принадлежность замкнутому шестиугольнику: |dy| <= a и sqrt(3)|dx| + |dy| <= sqrt(3) side"""
        pts = np.atleast_2d(points)
        dx = np.abs(pts[:, 0] - self.center.x)
        dy = np.abs(pts[:, 1] - self.center.y)
        tol = MEMBERSHIP_RTOL * self.side
        return (dy <= self.apothem + tol) & (SQRT3 * dx + dy <= SQRT3 * self.side + tol)

    def bounds(self) -> AABB:
        return AABB(
            self.center.x - self.side, self.center.x + self.side,
            self.center.y - self.apothem, self.center.y + self.apothem,
        )


@dataclass(frozen=True)
class HexUnion:
    """Объединение шестиугольников (замкнутая область)"""
    members: Tuple[Hexagon, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("Пустое объединение шестиугольников")

    @property
    def area(self) -> float:
        # Ячейки разбиения не перекрываются
        return sum(h.area for h in self.members)

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        mask = np.zeros(len(pts), dtype=bool)
        for hexagon in self.members:
            mask |= hexagon.contains(pts)
        return mask

    def bounds(self) -> AABB:
        boxes = [h.bounds() for h in self.members]
        return AABB(
            min(b.xmin for b in boxes), max(b.xmax for b in boxes),
            min(b.ymin for b in boxes), max(b.ymax for b in boxes),
        )


Region = Union[Hexagon, HexUnion, AABB]


class HexTessellation:
    """
    Разбиение плоскости на правильные шестиугольники с плоской вершиной

    Разбиение задается стороной и опорным горизонтальным ребром от
    anchor_start до anchor_start + (side, 0); ячейка (0, 0) лежит над
    опорным ребром, ячейка (0, -1) под ним. Ячейки индексируются осевыми
    координатами (q, r): центр = origin + side * (3/2 q, sqrt(3) (r + q/2)).
    """

    def __init__(self, side: float, anchor_start: Sequence[float] = ANCHOR_START):
        if not side > 0:
            raise ValueError(f"Сторона разбиения должна быть положительной: {side}")
        self.side = float(side)
        self.anchor_start = Point(float(anchor_start[0]), float(anchor_start[1]))
        self.origin = Point(
            self.anchor_start.x + 0.5 * self.side,
            self.anchor_start.y + 0.5 * SQRT3 * self.side,
        )

    @property
    def anchor(self) -> Segment:
        return Segment(self.anchor_start, Point(self.anchor_start.x + self.side, self.anchor_start.y))

    @property
    def cell_area(self) -> float:
        return 1.5 * SQRT3 * self.side ** 2

    def center_of(self, q: np.ndarray, r: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        r = np.asarray(r, dtype=float)
        return np.column_stack((
            self.origin.x + self.side * 1.5 * q,
            self.origin.y + self.side * SQRT3 * (r + 0.5 * q),
        ))

    def cell(self, q: int, r: int) -> Hexagon:
        cx, cy = self.center_of(np.array([q]), np.array([r]))[0]
        return Hexagon(Point(float(cx), float(cy)), self.side)

    def locate(self, points: np.ndarray) -> np.ndarray:
        """
        Осевые координаты ячеек, содержащих точки (округление кубических координат)

        Args:
            points: массив (n, 2)

        Returns:
            Целочисленный массив (n, 2) со столбцами q, r
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        x = (pts[:, 0] - self.origin.x) / self.side
        y = (pts[:, 1] - self.origin.y) / self.side
        qf = (2.0 / 3.0) * x
        rf = -x / 3.0 + y / SQRT3
        sf = -qf - rf

        q = np.rint(qf)
        r = np.rint(rf)
        s = np.rint(sf)
        dq = np.abs(q - qf)
        dr = np.abs(r - rf)
        ds = np.abs(s - sf)

        fix_q = (dq > dr) & (dq > ds)
        fix_r = ~fix_q & (dr > ds)
        q = np.where(fix_q, -r - s, q)
        r = np.where(fix_r, -q - s, r)
        return np.column_stack((q, r)).astype(np.int64)

    def cells_covering(self, window: AABB) -> np.ndarray:
        """Осевые координаты всех ячеек, центры которых лежат в окне"""
        corners = np.array([
            [window.xmin, window.ymin], [window.xmax, window.ymin],
            [window.xmin, window.ymax], [window.xmax, window.ymax],
        ])
        axial = self.locate(corners)
        q_lo, q_hi = axial[:, 0].min() - 2, axial[:, 0].max() + 2
        r_span = int(math.ceil(window.height / (SQRT3 * self.side))) + abs(q_hi - q_lo) + 4
        r_lo, r_hi = axial[:, 1].min() - r_span, axial[:, 1].max() + r_span
        qq, rr = np.meshgrid(np.arange(q_lo, q_hi + 1), np.arange(r_lo, r_hi + 1), indexing="ij")
        cand = np.column_stack((qq.ravel(), rr.ravel()))
        centers = self.center_of(cand[:, 0], cand[:, 1])
        inside = window.contains(centers)
        return cand[inside]

    @staticmethod
    def neighbors(q: int, r: int) -> List[Tuple[int, int]]:
        return [(q + dq, r + dr) for dq, dr in AXIAL_NEIGHBORS]


@dataclass(frozen=True)
class HexPair:
    """Пара шестиугольников H1 (над общим ребром) и H2 (под ним) с размеченными ребрами"""
    h1: Hexagon
    h2: Hexagon
    edges: Dict[str, Segment]

    @property
    def union(self) -> HexUnion:
        return HexUnion((self.h1, self.h2))

    def edge_group(self, *labels: str) -> List[Segment]:
        return [self.edges[label] for label in labels]


# Решетки

def _lattice_rows(region: AABB, row_height: float) -> np.ndarray:
    j_lo = math.floor(region.ymin / row_height) - 1
    j_hi = math.ceil(region.ymax / row_height) + 1
    rows = np.arange(j_lo, j_hi + 1)
    y = rows * row_height
    return rows[(y >= region.ymin) & (y < region.ymax)]


def tri_lattice_points(region: AABB) -> np.ndarray:
    """
    Узлы треугольной решетки {i (1, 0) + j (1/2, sqrt(3)/2)} в полуоткрытом окне

    Args:
        region: окно [xmin, xmax) x [ymin, ymax)

    Returns:
        Массив (n, 2), отсортированный по (y, x)
    """
    row_height = TRI_ROW_HEIGHT
    chunks = []
    for j in _lattice_rows(region, row_height):
        shift = 0.5 * j
        i_lo = math.floor(region.xmin - shift) - 1
        i_hi = math.ceil(region.xmax - shift) + 1
        x = np.arange(i_lo, i_hi + 1) + shift
        x = x[(x >= region.xmin) & (x < region.xmax)]
        chunks.append(np.column_stack((x, np.full(len(x), j * row_height))))
    if not chunks:
        return np.empty((0, 2))
    return np.concatenate(chunks)


def square_lattice_points(region: AABB) -> np.ndarray:
    """Узлы квадратной решетки Z^2 в полуоткрытом окне, по (y, x)"""
    chunks = []
    for j in _lattice_rows(region, 1.0):
        i_lo = math.floor(region.xmin) - 1
        i_hi = math.ceil(region.xmax) + 1
        x = np.arange(i_lo, i_hi + 1, dtype=float)
        x = x[(x >= region.xmin) & (x < region.xmax)]
        chunks.append(np.column_stack((x, np.full(len(x), float(j)))))
    if not chunks:
        return np.empty((0, 2))
    return np.concatenate(chunks)


# Предикаты

def balls_adjacent(p: Sequence[float], q: Sequence[float], r: float) -> bool:
    """Замкнутые шары радиуса r пересекаются: |p - q|^2 <= (2r)^2"""
    if not r > 0:
        raise ValueError(f"Радиус должен быть положительным: {r}")
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy <= 4.0 * r * r


def segment_distance_sq(points: np.ndarray, segment: Segment) -> np.ndarray:
    """Квадрат расстояния от точек до замкнутого отрезка"""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ax, ay = segment.a
    bx, by = segment.b
    vx, vy = bx - ax, by - ay
    wx = pts[:, 0] - ax
    wy = pts[:, 1] - ay
    length_sq = vx * vx + vy * vy
    proj = np.clip((wx * vx + wy * vy) / length_sq, 0.0, 1.0)
    dx = wx - proj * vx
    dy = wy - proj * vy
    return dx * dx + dy * dy


def balls_touching_segments(points: np.ndarray, r: float, segments: Iterable[Segment]) -> np.ndarray:
    """Маска шаров, пересекающих хотя бы один из отрезков"""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    mask = np.zeros(len(pts), dtype=bool)
    for segment in segments:
        mask |= segment_distance_sq(pts, segment) <= r * r
    return mask


def ball_intersects_segment(c: Sequence[float], r: float, s: Segment) -> bool:
    """Замкнутый шар B(c, r) пересекает замкнутый отрезок s"""
    if not r > 0:
        raise ValueError(f"Радиус должен быть положительным: {r}")
    return bool(segment_distance_sq(np.array([c], dtype=float), s)[0] <= r * r)


def point_in_region(p: Sequence[float], region: Region) -> bool:
    """Принадлежность точки замкнутой области (шестиугольник, объединение, окно)"""
    return bool(region.contains(np.array([p], dtype=float))[0])


def assert_no_nodes_on_edges(
    nodes: np.ndarray,
    segments: Iterable[Segment],
    tolerance: float = NODE_ON_EDGE_TOLERANCE,
) -> None:
    """
    Проверка, что ни один узел не лежит на ребрах

    Raises:
        RuntimeError: Если узел ближе tolerance к какому-либо ребру
    """
    for segment in segments:
        dist_sq = segment_distance_sq(nodes, segment)
        hits = np.flatnonzero(dist_sq < tolerance * tolerance)
        if len(hits):
            node = nodes[hits[0]]
            raise RuntimeError(
                f"Узел решетки ({node[0]:.6f}, {node[1]:.6f}) лежит на ребре "
                f"{segment.a} - {segment.b}"
            )


def hex_pair(side: float) -> HexPair:
    """
    Пара ячеек разбиения H_side, разделяющих опорное ребро e

    Ребра нумеруются по часовой стрелке от e: в H1 ребро e3 противоположно e,
    в H2 ребро e3' противоположно e.

    Args:
        side: сторона шестиугольников

    Returns:
        HexPair с ребрами e, e1..e5, e1'..e5'

    Raises:
        RuntimeError: Если узел треугольной решетки лежит на одном из ребер
    """
    tessellation = HexTessellation(side)
    h1 = tessellation.cell(0, 0)
    h2 = tessellation.cell(0, -1)

    edges: Dict[str, Segment] = {"e": tessellation.anchor}
    for hexagon, labels, order in ((h1, H1_LABELS, H1_CLOCKWISE), (h2, H2_LABELS, H2_CLOCKWISE)):
        for label, (start, end) in zip(labels, order):
            edges[label] = Segment(hexagon.vertex(start), hexagon.vertex(end))

    pair = HexPair(h1=h1, h2=h2, edges=edges)
    window = pair.union.bounds().padded(1.0)
    assert_no_nodes_on_edges(tri_lattice_points(window), edges.values())
    return pair
