"""
Точечные процессы и их броуновские возмущения

Реализованы: узлы решеток, пуассоновский процесс в окне или объединении
шестиугольников, бернуллиевское поле ячеек, пуассоновские метки узлов,
масштабная связка броуновских смещений и периодическая конфигурация
с суперпозицией шаров.

Смещения генерируются методом Generator.standard_normal (PCG64, ziggurat),
по одной паре (dx, dy) на узел в порядке хранения узлов.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from algorithms.geometry import AABB, HexTessellation, HexUnion, Hexagon, square_lattice_points, tri_lattice_points
from algorithms.utils import (
    DEFAULT_RADIUS,
    RngStream,
    as_generator,
    require_nonnegative,
    require_positive,
    require_probability,
)

from .consts import (
    DEFAULT_TIME_LABEL,
    FIGURE2_SOLID_MULTIPLICITY,
    FIGURE2_SOLIDS,
    FIGURE2_TILE,
    FIGURE2_WHITES,
    PADDING_SIGMAS,
)

RngLike = Union[RngStream, np.random.Generator]


# Структуры данных

@dataclass
class PointSet:
    """
    Конечное множество центров шаров

    Совпадающие шары хранятся один раз с кратностью. Смежность шаров от
    кратности не зависит, кратность учитывается в статистике и отрисовке.
    """
    points: np.ndarray
    radius: float = DEFAULT_RADIUS
    time_label: float = DEFAULT_TIME_LABEL
    multiplicity: Optional[np.ndarray] = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        require_positive(self.radius, "radius")
        require_nonnegative(self.time_label, "time_label")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("Координаты точек должны быть конечными")
        if self.multiplicity is None:
            self.multiplicity = np.ones(len(self.points), dtype=np.int64)
        else:
            self.multiplicity = np.asarray(self.multiplicity, dtype=np.int64).reshape(-1)
            if len(self.multiplicity) != len(self.points):
                raise ValueError(
                    f"Длина кратностей {len(self.multiplicity)} не совпадает с числом точек {len(self.points)}"
                )
            if np.any(self.multiplicity < 1):
                raise ValueError("Кратности должны быть положительными")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total_balls(self) -> int:
        return int(self.multiplicity.sum())

    def expanded(self) -> "PointSet":
        """Каждый из совпадающих шаров становится отдельной точкой кратности 1"""
        if np.all(self.multiplicity == 1):
            return self
        return PointSet(np.repeat(self.points, self.multiplicity, axis=0), self.radius, self.time_label)

    def with_radius(self, radius: float) -> "PointSet":
        return PointSet(self.points, radius, self.time_label, self.multiplicity)

    def subset(self, mask: np.ndarray) -> "PointSet":
        return PointSet(self.points[mask], self.radius, self.time_label, self.multiplicity[mask])

    def to_dict(self) -> dict:
        return {
            'radius': self.radius,
            'time_label': self.time_label,
            'points': [
                [float(x), float(y), int(m)]
                for (x, y), m in zip(self.points, self.multiplicity)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PointSet":
        rows = data.get('points', [])
        points = np.array([[row[0], row[1]] for row in rows], dtype=float).reshape(-1, 2)
        multiplicity = np.array([row[2] if len(row) > 2 else 1 for row in rows], dtype=np.int64)
        return cls(points, float(data.get('radius', DEFAULT_RADIUS)),
                   float(data.get('time_label', DEFAULT_TIME_LABEL)), multiplicity)

    def to_rows(self) -> List[Tuple[float, float, int]]:
        """Строки для CSV с заголовком x,y,multiplicity"""
        return [(float(x), float(y), int(m)) for (x, y), m in zip(self.points, self.multiplicity)]


@dataclass
class SiteField:
    """Бернуллиевское поле на ячейках гексагонального разбиения"""
    p: float
    cell_side: float
    cells: np.ndarray
    values: np.ndarray = field(repr=False)

    def open_cells(self) -> np.ndarray:
        return self.cells[self.values]

    def as_map(self) -> Dict[Tuple[int, int], int]:
        return {(int(q), int(r)): int(v) for (q, r), v in zip(self.cells, self.values)}

    @property
    def open_fraction(self) -> float:
        return float(self.values.mean()) if len(self.values) else 0.0


# Смещения

def brownian_displacements(n: int, t: float, rng: RngLike) -> np.ndarray:
    """
    Независимые смещения броуновского движения в момент t

    Args:
        n: число узлов
        t: время (дисперсия по каждой координате)
        rng: поток случайных чисел

    Returns:
        Массив (n, 2)

    Raises:
        ValueError: Если t < 0
    """
    require_nonnegative(t, "t")
    gen = as_generator(rng)
    if t == 0:
        return np.zeros((n, 2))
    return math.sqrt(t) * gen.standard_normal((n, 2))


def brownian_displace(points: PointSet, t: float, rng: RngLike) -> PointSet:
    """
    Сдвигает каждый шар на независимое гауссово смещение с дисперсией t по координате

    Совпадающие шары двигаются независимо, поэтому кратности раскрываются.
    При t = 0 возвращается копия входа.
    """
    require_nonnegative(t, "t")
    if t == 0:
        return PointSet(points.points.copy(), points.radius, points.time_label, points.multiplicity.copy())
    flat = points.expanded()
    moved = flat.points + brownian_displacements(len(flat), t, rng)
    return PointSet(moved, points.radius, points.time_label + t)


def brownian_scaling_couple(displacements: np.ndarray, s: float, s_prime: float) -> np.ndarray:
    """
    Смещения момента s из смещений момента s' по закону масштабирования sqrt(s/s')

    Raises:
        ValueError: Если s > s', s < 0 или s' <= 0
    """
    require_nonnegative(s, "s")
    require_positive(s_prime, "s_prime")
    if s > s_prime:
        raise ValueError(f"Требуется s <= s', получено s={s}, s'={s_prime}")
    return math.sqrt(s / s_prime) * np.asarray(displacements, dtype=float)


# Пуассоновские процессы

def _uniform_in_region(region, count: int, gen: np.random.Generator) -> np.ndarray:
    box = region.bounds()
    if isinstance(region, AABB):
        return np.column_stack((
            gen.uniform(box.xmin, box.xmax, count),
            gen.uniform(box.ymin, box.ymax, count),
        ))
    # Выборка с отклонением из описанного прямоугольника
    accepted = np.empty((0, 2))
    while len(accepted) < count:
        need = count - len(accepted)
        batch = max(16, int(need * box.area / region.area * 1.2))
        cand = np.column_stack((
            gen.uniform(box.xmin, box.xmax, batch),
            gen.uniform(box.ymin, box.ymax, batch),
        ))
        accepted = np.concatenate((accepted, cand[region.contains(cand)]))
    return accepted[:count]


def sample_poisson_pp(
    region: Union[AABB, Hexagon, HexUnion],
    lam: float,
    rng: RngLike,
    radius: float = DEFAULT_RADIUS,
) -> PointSet:
    """
    Пуассоновский процесс интенсивности lam в ограниченной области

    Args:
        region: прямоугольное окно, шестиугольник или их объединение
        lam: интенсивность
        rng: поток случайных чисел
        radius: радиус шаров

    Returns:
        PointSet с числом точек ~ Poisson(lam * area)

    Raises:
        ValueError: Если lam < 0
    """
    require_nonnegative(lam, "lambda")
    gen = as_generator(rng)
    count = int(gen.poisson(lam * region.area)) if lam > 0 else 0
    return PointSet(_uniform_in_region(region, count, gen), radius)


def poisson_marks(points: PointSet, mu: float, rng: RngLike) -> np.ndarray:
    """Независимые метки Poisson(mu) для каждого шара (по кратностям раскрытого множества)"""
    require_nonnegative(mu, "mu")
    gen = as_generator(rng)
    n = points.total_balls
    if mu == 0:
        return np.zeros(n, dtype=np.int64)
    return gen.poisson(mu, n).astype(np.int64)


def thin_marks(marks: np.ndarray, keep: float, rng: RngLike) -> np.ndarray:
    """Независимое прореживание меток: каждая единица сохраняется с вероятностью keep"""
    require_probability(keep, "keep")
    gen = as_generator(rng)
    return gen.binomial(np.asarray(marks, dtype=np.int64), keep).astype(np.int64)


# Бернуллиевское поле ячеек

def sample_site_field(p: float, cell_side: float, window: AABB, rng: RngLike) -> SiteField:
    """
    Поле X_i ~ Bernoulli(p) на ячейках разбиения со стороной cell_side

    В поле входят ячейки, центры которых лежат в окне; порядок ячеек
    лексикографический по осевым координатам.
    """
    require_probability(p, "p")
    require_positive(cell_side, "cell_side")
    gen = as_generator(rng)
    tessellation = HexTessellation(cell_side)
    cells = tessellation.cells_covering(window)
    order = np.lexsort((cells[:, 1], cells[:, 0]))
    cells = cells[order]
    values = gen.random(len(cells)) < p
    return SiteField(p=p, cell_side=cell_side, cells=cells, values=values)


# Решетки с возмущениями

def lattice_pointset(kind: str, window: AABB, radius: float = DEFAULT_RADIUS) -> PointSet:
    """Невозмущенная решетка ('triangular' или 'square') в окне"""
    if kind == 'triangular':
        nodes = tri_lattice_points(window)
    elif kind == 'square':
        nodes = square_lattice_points(window)
    else:
        raise ValueError(f"Неизвестный тип решетки: {kind}")
    return PointSet(nodes, radius)


def perturbed_lattice(
    kind: str,
    window: AABB,
    t: float,
    rng: RngLike,
    radius: float = DEFAULT_RADIUS,
    padding: Optional[float] = None,
) -> PointSet:
    """
    Решетка в окне, расширенном на padding (по умолчанию 6 sqrt(t)), после смещения на время t

    Узлы извне окна могут попасть внутрь, поэтому перечисление идет по
    расширенному окну; фильтрация по области выполняется при проверке пересечения.
    """
    require_nonnegative(t, "t")
    pad = PADDING_SIGMAS * math.sqrt(t) if padding is None else padding
    base = lattice_pointset(kind, window.padded(pad) if pad > 0 else window, radius)
    return brownian_displace(base, t, rng)


# Конфигурация с суперпозицией шаров

def _require_aligned(window: AABB) -> None:
    for value in (window.xmin, window.ymin, window.width, window.height):
        ratio = value / FIGURE2_TILE
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError(f"Окно {window} не согласовано с плитками периода {FIGURE2_TILE}")


def figure2_configuration(window: AABB, radius: float = DEFAULT_RADIUS) -> PointSet:
    """
    Периодическая конфигурация: в каждой плитке 6 x 6 девять позиций по 14 шаров
    и 18 одиночных шаров (плотность 4)

    Raises:
        ValueError: Если окно не выровнено по плиткам
    """
    _require_aligned(window)
    nx = int(round(window.width / FIGURE2_TILE))
    ny = int(round(window.height / FIGURE2_TILE))

    solids = np.array(FIGURE2_SOLIDS)
    whites = np.array(FIGURE2_WHITES)
    base = np.concatenate((solids, whites))
    base_mult = np.concatenate((
        np.full(len(solids), FIGURE2_SOLID_MULTIPLICITY, dtype=np.int64),
        np.ones(len(whites), dtype=np.int64),
    ))

    points = []
    multiplicity = []
    for j in range(ny):
        for i in range(nx):
            offset = np.array([window.xmin + i * FIGURE2_TILE, window.ymin + j * FIGURE2_TILE])
            points.append(base + offset)
            multiplicity.append(base_mult)
    if not points:
        return PointSet(np.empty((0, 2)), radius)
    return PointSet(np.concatenate(points), radius, DEFAULT_TIME_LABEL, np.concatenate(multiplicity))


def wrap_to_window(points: PointSet, window: AABB) -> PointSet:
    """Сворачивает точки на тор, заданный окном"""
    pts = points.points.copy()
    pts[:, 0] = window.xmin + np.mod(pts[:, 0] - window.xmin, window.width)
    pts[:, 1] = window.ymin + np.mod(pts[:, 1] - window.ymin, window.height)
    return PointSet(pts, points.radius, points.time_label, points.multiplicity)


def perturbed_figure2(window: AABB, t: float, rng: RngLike, radius: float = DEFAULT_RADIUS) -> PointSet:
    """Периодическая конфигурация после смещения на время t, свернутая на тор окна"""
    moved = brownian_displace(figure2_configuration(window, radius), t, rng)
    return wrap_to_window(moved, window)
