"""
Численная проверка ингредиентов стохастического доминирования

- ядро phi_t на гексагональном разбиении со стороной delta sqrt(t)
  и окрестность J_i
- вероятность "хорошего" узла и остаточная интенсивность Lambda(x)
- вероятность пустого шестиугольника
- закон 1/m! для путей на Z
- монотонная связка сохранения ребер
- бернуллиевское поле ячеек и его кластеры
- вероятность сохранения смежности двух соседних шаров

Все расстояния между ячейками считаются точно по вершинам: шестиугольник
центрально-симметричен, поэтому sup расстояния между Q_i и Q_j равен
max_k |d + 2 v_k|, где d - разность центров, v_k - вершины ячейки с центром 0.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import ncx2

from algorithms.cluster import DisjointSet, IntersectionGraph
from algorithms.estimators import BinomialCI, clopper_pearson, gaussian_tail
from algorithms.geometry import AABB, HexTessellation, Hexagon, Point, tri_lattice_points
from algorithms.geometry.consts import AXIAL_NEIGHBORS
from algorithms.pointproc import PointSet, brownian_displacements, brownian_scaling_couple, sample_site_field
from algorithms.utils import (
    SQRT3,
    TRIANGULAR_DENSITY,
    RngStream,
    as_generator,
    require_nonnegative,
    require_positive,
    require_probability,
)

logger = logging.getLogger(__name__)

# Отрицательные значения g_t в пределах округления
RESIDUAL_TOLERANCE = 1e-12

# Радиус усечения суммы Lambda(x) в единицах sqrt(t)
TRUNCATION_SIGMAS = 6.0

# Лимит попыток выборки с отклонением на один узел
REJECTION_ATTEMPTS = 1000

HEX_AREA_FACTOR = 1.5 * SQRT3


# Структуры данных

@dataclass(frozen=True)
class DominationParams:
    """
    Параметры разбиения: delta, время t, вероятность ячейки p

    C = 4 delta^(-3/2), сторона ячейки delta sqrt(t).
    """
    delta: float
    t: float = 1.0
    p: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise ValueError(f"delta должно лежать в (0, 1], получено {self.delta}")
        require_positive(self.t, "t")
        require_probability(self.p, "p")

    @property
    def C(self) -> float:
        return 4.0 * self.delta ** -1.5

    @property
    def cell_side(self) -> float:
        return self.delta * math.sqrt(self.t)

    @property
    def cell_area(self) -> float:
        return HEX_AREA_FACTOR * self.cell_side ** 2

    @property
    def mu(self) -> float:
        """e^(-mu) = P(узел хороший)"""
        return -math.log(well_behaved_probability(self))

    def to_dict(self) -> dict:
        return {'delta': self.delta, 't': self.t, 'p': self.p, 'C': self.C, 'mu': self.mu}


@dataclass
class HexKernel:
    """
    Ядро phi_t(i, j) на окрестности J_i ячейки с центром в начале координат

    offsets: осевые смещения (q, r) ячеек окрестности
    sup_distance: sup расстояния между точками ячеек в единицах стороны
    values: phi_t(i, j), нормировка M = сумма values
    """
    cell_side: float
    t: float
    offsets: np.ndarray
    sup_distance: np.ndarray
    values: np.ndarray
    _grid: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.offsets)

    @property
    def normalizer(self) -> float:
        return float(self.values.sum())

    @property
    def reach(self) -> int:
        return int(np.abs(self.offsets).max()) if len(self.offsets) else 0

    def _table(self) -> np.ndarray:
        # плотная таблица значений по (q + reach, r + reach), строится при первом обращении
        if self._grid is None:
            reach = self.reach
            grid = np.zeros((2 * reach + 1, 2 * reach + 1))
            grid[self.offsets[:, 0] + reach, self.offsets[:, 1] + reach] = self.values
            self._grid = grid
        return self._grid

    def phi(self, dq: int, dr: int) -> float:
        """phi_t для осевого смещения (0 вне окрестности)"""
        return float(self.phi_many(np.array([[dq, dr]]))[0])

    def phi_many(self, offsets: np.ndarray) -> np.ndarray:
        offsets = np.atleast_2d(np.asarray(offsets, dtype=np.int64))
        table = self._table()
        reach = self.reach
        idx = offsets + reach
        inside = np.all((idx >= 0) & (idx <= 2 * reach), axis=1)
        out = np.zeros(len(offsets))
        out[inside] = table[idx[inside, 0], idx[inside, 1]]
        return out

    def transition_probabilities(self) -> np.ndarray:
        """Вероятности выбора j пропорционально phi_t(i, j)"""
        return self.values / self.normalizer


# Ядро и окрестность

def gaussian_density(r: np.ndarray, t: float) -> np.ndarray:
    """Плотность f_t на расстоянии r: exp(-r^2 / 2t) / (2 pi t)"""
    r = np.asarray(r, dtype=float)
    return np.exp(-r * r / (2.0 * t)) / (2.0 * math.pi * t)


def _unit_vertices() -> np.ndarray:
    # v_{k+3} = -v_k побитово, поэтому sup расстояние симметрично по смещению
    h = 0.5 * SQRT3
    return np.array([[1.0, 0.0], [0.5, h], [-0.5, h], [-1.0, 0.0], [-0.5, -h], [0.5, -h]])


def sup_cell_distance(offsets: np.ndarray) -> np.ndarray:
    """
    sup |x - y| по x из ячейки 0 и y из ячейки (q, r), в единицах стороны

    Args:
        offsets: осевые смещения (n, 2)
    """
    offsets = np.atleast_2d(offsets).astype(float)
    dx = 1.5 * offsets[:, 0]
    dy = SQRT3 * (offsets[:, 1] + 0.5 * offsets[:, 0])
    verts = 2.0 * _unit_vertices()
    px = dx[:, None] + verts[None, :, 0]
    py = dy[:, None] + verts[None, :, 1]
    return np.sqrt(px * px + py * py).max(axis=1)


def build_J(delta: float) -> np.ndarray:
    """
    Окрестность J_i: ячейки, sup расстояние до которых не больше C delta sqrt(t)

    В единицах стороны ячейки условие имеет вид sup <= C и не зависит от t.

    Returns:
        Осевые смещения (n, 2), упорядоченные по (q, r)
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta должно лежать в (0, 1], получено {delta}")
    C = 4.0 * delta ** -1.5
    # sup >= |d| + sqrt(3), поэтому достаточно центров в круге радиуса C - sqrt(3)
    limit = C - SQRT3
    columns = []
    q_reach = int(math.floor(limit / 1.5)) + 1
    for q in range(-q_reach, q_reach + 1):
        dx = 1.5 * q
        if dx * dx > limit * limit:
            continue
        half = math.sqrt(limit * limit - dx * dx) / SQRT3
        r = np.arange(math.floor(-half - 0.5 * q) - 1, math.ceil(half - 0.5 * q) + 2)
        cand = np.column_stack((np.full(len(r), q), r))
        columns.append(cand[sup_cell_distance(cand) <= C])
    return np.concatenate(columns).astype(np.int64)


def build_kernel(params: DominationParams) -> HexKernel:
    """Ядро phi_t(i, j) = f_t(sup расстояния) на J_i"""
    offsets = build_J(params.delta)
    sup_units = sup_cell_distance(offsets)
    values = gaussian_density(sup_units * params.cell_side, params.t)
    return HexKernel(cell_side=params.cell_side, t=params.t, offsets=offsets,
                     sup_distance=sup_units, values=values)


def J_size_bounds(delta: float) -> Tuple[float, float]:
    """Границы (C - 3)^2 <= |J_i| <= 4/3 C^2"""
    C = 4.0 * delta ** -1.5
    return (C - 3.0) ** 2, 4.0 / 3.0 * C ** 2


def well_behaved_probability(params: DominationParams) -> float:
    """
    Вероятность хорошего узла: сумма по J_i площади ячейки, умноженной на phi_t(i, j)

    Raises:
        RuntimeError: Если результат вне (0, 1]
    """
    kernel = build_kernel(params)
    value = float(params.cell_area * kernel.values.sum())
    if not 0.0 < value <= 1.0:
        raise RuntimeError(f"Вероятность хорошего узла вне (0, 1]: {value}")
    return value


def well_behaved_lower_bound(delta: float) -> float:
    """1 - 12 delta / sqrt(2 pi) - 4 / (sqrt(pi) C delta) exp(-delta^2 C^2 / 4)"""
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta должно лежать в (0, 1], получено {delta}")
    C = 4.0 * delta ** -1.5
    return (
        1.0
        - 12.0 * delta / math.sqrt(2.0 * math.pi)
        - 4.0 / (math.sqrt(math.pi) * C * delta) * math.exp(-delta ** 2 * C ** 2 / 4.0)
    )


@dataclass
class WellBehavedCheck:
    """Аналитическое значение и оценка по схеме принятия-отклонения"""
    analytic: float
    trials: int
    accepted: int
    ci: BinomialCI

    @property
    def empirical(self) -> float:
        return self.accepted / self.trials

    @property
    def sigma(self) -> float:
        return math.sqrt(self.analytic * (1.0 - self.analytic) / self.trials)

    @property
    def consistent(self) -> bool:
        return abs(self.empirical - self.analytic) <= 3.0 * self.sigma

    def to_dict(self) -> dict:
        return {
            'analytic': self.analytic,
            'empirical': self.empirical,
            'trials': self.trials,
            'accepted': self.accepted,
            'ci': self.ci.to_dict(),
            'consistent': self.consistent,
        }


def well_behaved_monte_carlo(params: DominationParams, trials: int, rng) -> WellBehavedCheck:
    """
    Связка прямого броуновского шага с двухэтапным переходом по ячейкам

    Старт x равномерен в ячейке 0, y = x + N(0, t I); переход принимается
    с вероятностью phi_t(0, q(y)) / f_t(y - x). Частота принятия равна
    вероятности хорошего узла.
    """
    if trials < 1:
        raise ValueError(f"Число испытаний должно быть положительным, получено {trials}")
    gen = as_generator(rng)
    kernel = build_kernel(params)
    tessellation = HexTessellation(params.cell_side, anchor_start=(-0.5 * params.cell_side, -0.5 * SQRT3 * params.cell_side))
    home = tessellation.cell(0, 0)

    starts = np.empty((0, 2))
    box = home.bounds()
    while len(starts) < trials:
        batch = np.column_stack((
            gen.uniform(box.xmin, box.xmax, 2 * trials),
            gen.uniform(box.ymin, box.ymax, 2 * trials),
        ))
        starts = np.concatenate((starts, batch[home.contains(batch)]))
    starts = starts[:trials]

    steps = math.sqrt(params.t) * gen.standard_normal((trials, 2))
    ends = starts + steps
    cells = tessellation.locate(ends)
    phi = kernel.phi_many(cells)
    density = gaussian_density(np.linalg.norm(steps, axis=1), params.t)
    accept_prob = np.where(density > 0, phi / np.maximum(density, np.finfo(float).tiny), 0.0)
    if np.any(accept_prob > 1.0 + 1e-9):
        raise RuntimeError("phi_t превышает f_t: нарушено свойство инфимума")
    accepted = int((gen.random(trials) < accept_prob).sum())

    analytic = well_behaved_probability(params)
    return WellBehavedCheck(
        analytic=analytic, trials=trials, accepted=accepted,
        ci=clopper_pearson(accepted, trials, 0.9973),
    )


# Остаточная интенсивность

@dataclass
class ResidualIntensity:
    """Lambda(x) с оценкой отброшенного хвоста"""
    x: Tuple[float, float]
    value: float
    tail: float
    nodes: int
    delta: float
    c: float

    @property
    def total(self) -> float:
        return self.value + self.tail

    @property
    def ratio(self) -> float:
        """Lambda(x) / sqrt(delta)"""
        return self.total / math.sqrt(self.delta)

    @property
    def within_bound(self) -> bool:
        return self.total <= self.c * math.sqrt(self.delta)

    def to_dict(self) -> dict:
        return {
            'x': list(self.x),
            'value': self.value,
            'tail': self.tail,
            'total': self.total,
            'nodes': self.nodes,
            'ratio': self.ratio,
            'c': self.c,
            'within_bound': self.within_bound,
        }


def residual_intensity(
    params: DominationParams,
    x: Sequence[float],
    truncation_radius: Optional[float] = None,
    c: float = 1.0,
    kernel: Optional[HexKernel] = None,
) -> ResidualIntensity:
    """
    Lambda(x) = сумма mu g_t(x, v) по узлам решетки v в круге радиуса R

    g_t(x, v) = (f_t(v - x) - phi_t(q(x), q(v))) / (1 - e^(-mu)).
    Вклад узлов за пределами R оценивается гауссовым хвостом с запасом 1.

    Args:
        params: параметры разбиения (mu <= 1)
        x: точка
        truncation_radius: R >= 6 sqrt(t), по умолчанию 6 sqrt(t)
        c: константа для сравнения с c sqrt(delta)
        kernel: предвычисленное ядро

    Raises:
        ValueError: Если mu > 1 или R < 6 sqrt(t)
        RuntimeError: Если g_t отрицательна
    """
    t = params.t
    radius = TRUNCATION_SIGMAS * math.sqrt(t) if truncation_radius is None else float(truncation_radius)
    if radius < TRUNCATION_SIGMAS * math.sqrt(t) * (1.0 - 1e-12):
        raise ValueError(f"Радиус усечения {radius} меньше 6 sqrt(t) = {TRUNCATION_SIGMAS * math.sqrt(t)}")
    if (radius - 1.0) / math.sqrt(2.0) < math.sqrt(t):
        raise ValueError(f"Радиус усечения {radius} слишком мал для оценки хвоста при t={t}")

    mu = params.mu
    if mu > 1.0:
        raise ValueError(f"Оценка требует mu <= 1, получено mu={mu:.6f}")
    kernel = kernel or build_kernel(params)
    tessellation = HexTessellation(params.cell_side)
    px, py = float(x[0]), float(x[1])

    window = AABB(px - radius, px + radius, py - radius, py + radius)
    nodes = tri_lattice_points(window)
    offsets = nodes - np.array([px, py])
    dist = np.linalg.norm(offsets, axis=1)
    nodes, dist = nodes[dist <= radius], dist[dist <= radius]

    home = tessellation.locate(np.array([[px, py]]))[0]
    cells = tessellation.locate(nodes) - home
    phi = kernel.phi_many(cells)
    f = gaussian_density(dist, t)
    residual = f - phi
    if np.any(residual < -RESIDUAL_TOLERANCE * f.max(initial=0.0)):
        raise RuntimeError("Отрицательное значение g_t: phi_t превышает f_t")
    scale = mu / (1.0 - math.exp(-mu))
    value = float(scale * np.clip(residual, 0.0, None).sum())
    tail = scale * TRIANGULAR_DENSITY * 4.0 * gaussian_tail(math.sqrt(t), (radius - 1.0) / math.sqrt(2.0))
    return ResidualIntensity(x=(px, py), value=value, tail=tail, nodes=int(len(nodes)), delta=params.delta, c=c)


def residual_sweep(
    deltas: Sequence[float],
    t: float,
    samples: int,
    rng,
) -> List[Dict[str, float]]:
    """Наибольшее Lambda(x) / sqrt(delta) по samples случайным точкам для каждого delta"""
    gen = as_generator(rng)
    rows = []
    for delta in deltas:
        params = DominationParams(delta=delta, t=t)
        kernel = build_kernel(params)
        points = gen.uniform(0.0, 1.0, (samples, 2)) * np.array([1.0, 0.5 * SQRT3])
        values = [residual_intensity(params, p, kernel=kernel) for p in points]
        worst = max(values, key=lambda r: r.ratio)
        rows.append({'delta': delta, 'mu': params.mu, 'max_lambda': worst.total, 'max_ratio': worst.ratio})
        logger.debug("Residual sweep delta=%s: max ratio %.6f", delta, worst.ratio)
    return rows


# Пустой шестиугольник

def empty_hexagon_bound(t: float) -> float:
    """exp(-(log t)^4 t / 432) для t >= e"""
    if t < math.e:
        raise ValueError(f"Оценка определена при t >= e, получено {t}")
    return math.exp(-(math.log(t) ** 4) * t / 432.0)


@dataclass
class EmptyHexagonResult:
    """Частота пустого шестиугольника и пуассоновский эталон"""
    t: float
    side: float
    trials: int
    empty: int
    poisson_reference: float
    bound: Optional[float] = None

    @property
    def empirical(self) -> float:
        return self.empty / self.trials

    @property
    def sigma(self) -> float:
        p = max(self.empirical, self.poisson_reference)
        return math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def below_reference(self) -> bool:
        return self.empirical <= self.poisson_reference + 3.0 * self.sigma

    def to_dict(self) -> dict:
        return {
            't': self.t,
            'side': self.side,
            'trials': self.trials,
            'empty': self.empty,
            'empirical': self.empirical,
            'poisson_reference': self.poisson_reference,
            'bound': self.bound,
            'below_reference': self.below_reference,
        }


def empty_hexagon_probability(
    t: float,
    trials: int,
    rng: RngStream,
    k: float = 1.0,
    side: Optional[float] = None,
    center: Sequence[float] = (0.25, 0.1),
) -> EmptyHexagonResult:
    """
    Частота того, что в шестиугольнике S со стороной k sqrt(t) нет узлов возмущенной решетки

    Узлы перечисляются в окне, расширенном на 6 max(k, 1) sqrt(t).
    Эталон: вероятность пустоты для пуассоновского процесса той же плотности.
    При t = 0 сторона k sqrt(t) вырождается, поэтому side обязателен.

    Args:
        t: время
        trials: число испытаний
        rng: поток; испытание k использует rng.with_index(k)
        k: множитель стороны
        side: явная сторона S (заменяет k sqrt(t)), обязательна при t = 0
        center: центр S

    Raises:
        ValueError: Если t = 0 без side или сторона S не положительна
    """
    require_nonnegative(t, "t")
    if t == 0 and side is None:
        raise ValueError("При t = 0 сторону шестиугольника нужно задать явно (side)")
    side = k * math.sqrt(t) if side is None else float(side)
    if not side > 0:
        raise ValueError(f"Сторона шестиугольника должна быть положительной: {side}")
    hexagon = Hexagon(Point(float(center[0]), float(center[1])), side)
    pad = TRUNCATION_SIGMAS * max(k, 1.0) * math.sqrt(t)
    nodes = tri_lattice_points(hexagon.bounds().padded(pad + 1.0))

    empty = 0
    for index in range(trials):
        moved = nodes + brownian_displacements(len(nodes), t, rng.with_index(index))
        if not np.any(hexagon.contains(moved)):
            empty += 1
    reference = math.exp(-TRIANGULAR_DENSITY * hexagon.area)
    bound = empty_hexagon_bound(t) if t >= math.e else None
    return EmptyHexagonResult(t=t, side=side, trials=trials, empty=empty,
                              poisson_reference=reference, bound=bound)


# Закон 1/m!

@dataclass
class PathLawResult:
    """Частота пути из m последовательных узлов Z"""
    m: int
    epsilon: float
    trials: int
    successes: int

    @property
    def frequency(self) -> float:
        return self.successes / self.trials

    @property
    def expected(self) -> float:
        return 1.0 / math.factorial(self.m)

    @property
    def sigma(self) -> float:
        p = self.expected
        return math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def consistent(self) -> bool:
        return abs(self.frequency - self.expected) <= 3.0 * self.sigma + 1e-15

    def to_dict(self) -> dict:
        return {
            'm': self.m,
            'epsilon': self.epsilon,
            'trials': self.trials,
            'successes': self.successes,
            'frequency': self.frequency,
            'expected': self.expected,
            'consistent': self.consistent,
        }


def good_displacements(shape: Tuple[int, ...], epsilon: float, gen: np.random.Generator) -> np.ndarray:
    """
    Смещения N(0, epsilon), обусловленные |смещение| < 1/2 (выборка с отклонением)

    Raises:
        RuntimeError: Если лимит попыток исчерпан
    """
    sd = math.sqrt(epsilon)
    values = sd * gen.standard_normal(shape)
    bad = np.abs(values) >= 0.5
    attempts = 1
    while np.any(bad):
        if attempts >= REJECTION_ATTEMPTS:
            raise RuntimeError(f"Выборка с отклонением не сошлась за {REJECTION_ATTEMPTS} попыток")
        values[bad] = sd * gen.standard_normal(int(bad.sum()))
        bad = np.abs(values) >= 0.5
        attempts += 1
    return values


def path_law_1_over_m_factorial(m: int, epsilon: float, trials: int, rng) -> PathLawResult:
    """
    Частота того, что узлы 1..m из Z после хороших смещений образуют путь

    Соседи i, i+1 остаются на расстоянии не больше 1 тогда и только тогда,
    когда смещение i+1 не больше смещения i, поэтому событие совпадает
    с упорядоченностью смещений.

    Raises:
        ValueError: Если m < 1 или epsilon <= 0
    """
    if m < 1:
        raise ValueError(f"m должно быть не меньше 1, получено {m}")
    require_positive(epsilon, "epsilon")
    if trials < 1:
        raise ValueError(f"Число испытаний должно быть положительным, получено {trials}")
    gen = as_generator(rng)
    if m == 1:
        return PathLawResult(m, epsilon, trials, trials)

    disp = good_displacements((trials, m), epsilon, gen)
    positions = np.arange(m, dtype=float)[None, :] + disp
    gaps = np.diff(positions, axis=1)
    success = np.all(np.abs(gaps) <= 1.0, axis=1)
    return PathLawResult(m, epsilon, trials, int(success.sum()))


# Монотонная связка сохранения ребер

def hexagonal_flower(radius: float = 0.5) -> PointSet:
    """Центр и шесть соседей треугольной решетки"""
    petals = _unit_vertices()
    return PointSet(np.vstack(([0.0, 0.0], petals)), radius)


@dataclass
class EdgePreservationResult:
    """Частоты сохранения всех ребер по моментам s"""
    s_list: List[float]
    trials: int
    indicators: np.ndarray = field(repr=False)

    @property
    def frequencies(self) -> List[float]:
        return [float(v) for v in self.indicators.mean(axis=0)]

    @property
    def pathwise_monotone(self) -> bool:
        """Индикатор не возрастает по s в каждом испытании"""
        return bool(np.all(np.diff(self.indicators.astype(np.int8), axis=1) <= 0))

    def to_dict(self) -> dict:
        return {
            's_list': self.s_list,
            'trials': self.trials,
            'frequencies': self.frequencies,
            'pathwise_monotone': self.pathwise_monotone,
        }


def monotone_edge_preservation(
    points: PointSet,
    s_list: Sequence[float],
    trials: int,
    rng: RngStream,
    coupled: bool = True,
) -> EdgePreservationResult:
    """
    Частота события E(V) в E(V_s) для возрастающих s

    В связанном режиме смещения момента s получаются масштабированием одних
    и тех же смещений наибольшего момента, поэтому индикатор не возрастает
    по s в каждом испытании.

    Raises:
        ValueError: Если граф V несвязен или s_list не возрастает
    """
    s_values = [float(s) for s in s_list]
    if not s_values or any(s < 0 for s in s_values) or any(b <= a for a, b in zip(s_values, s_values[1:])):
        raise ValueError(f"Моменты должны быть неотрицательными и строго возрастать: {s_values}")
    if trials < 1:
        raise ValueError(f"Число испытаний должно быть положительным, получено {trials}")
    graph = IntersectionGraph(points)
    if len(points) > 1 and graph.component_count != 1:
        raise ValueError(f"Граф V несвязен: {graph.component_count} компонент")

    edges = graph.edges
    base = points.points[edges[:, 1]] - points.points[edges[:, 0]]
    reach = 4.0 * points.radius ** 2
    s_max = s_values[-1]

    indicators = np.zeros((trials, len(s_values)), dtype=bool)
    for index in range(trials):
        stream = rng.with_index(index)
        if coupled and s_max > 0:
            top = brownian_displacements(len(points), s_max, stream)
            draws = [brownian_scaling_couple(top, s, s_max) for s in s_values]
        else:
            draws = [brownian_displacements(len(points), s, stream.substream(k)) for k, s in enumerate(s_values)]
        for k, disp in enumerate(draws):
            moved = base + disp[edges[:, 1]] - disp[edges[:, 0]]
            indicators[index, k] = bool(np.all(np.einsum("ij,ij->i", moved, moved) <= reach))
    return EdgePreservationResult(s_list=s_values, trials=trials, indicators=indicators)


# Поле ячеек

@dataclass
class FieldSummary:
    """Кластеры открытых ячеек бернуллиевского поля"""
    p: float
    cells: int
    open_cells: int
    largest: int
    spans: bool

    @property
    def largest_fraction(self) -> float:
        return self.largest / self.cells if self.cells else 0.0

    def to_dict(self) -> dict:
        return {
            'p': self.p,
            'cells': self.cells,
            'open_cells': self.open_cells,
            'largest': self.largest,
            'largest_fraction': self.largest_fraction,
            'spans': self.spans,
        }


def renormalization_field_demo(p: float, delta: float, window: AABB, rng, t: float = 1.0) -> FieldSummary:
    """
    Перколяция по ячейкам поля C(p, delta) с гексагональной смежностью

    Кластер пересекает окно, если содержит ячейки крайнего левого и крайнего
    правого столбцов.
    """
    require_probability(p, "p")
    params = DominationParams(delta=delta, t=t, p=p)
    site_field = sample_site_field(p, params.cell_side, window, rng)
    cells = site_field.cells
    if len(cells) == 0:
        return FieldSummary(p, 0, 0, 0, False)

    open_idx = np.flatnonzero(site_field.values)
    if not len(open_idx):
        return FieldSummary(p, len(cells), 0, 0, False)
    index = {(int(cells[i, 0]), int(cells[i, 1])): k for k, i in enumerate(open_idx)}
    pairs = [
        (k, other)
        for (q, r), k in index.items()
        for dq, dr in AXIAL_NEIGHBORS
        if (other := index.get((q + dq, r + dr))) is not None
    ]
    forest = DisjointSet(len(open_idx))
    forest.union_pairs(pairs)

    roots = forest.roots()
    labels, sizes = np.unique(roots, return_counts=True)
    top = labels[np.argmax(sizes)]
    members = open_idx[roots == top]
    q_all = cells[:, 0]
    q_members = cells[members, 0]
    spans = bool(q_members.min() == q_all.min() and q_members.max() == q_all.max())
    return FieldSummary(p=p, cells=int(len(cells)), open_cells=int(len(open_idx)),
                        largest=int(sizes.max()), spans=spans)


# Пара соседних шаров

def adjacent_pair_probability(t: float, spacing: float = 1.0) -> float:
    """
    P(|(spacing, 0) + Z| <= 1) для Z ~ N(0, 2t I): шары радиуса 1/2 в соседних узлах остаются смежными

    Raises:
        ValueError: Если t < 0 или spacing <= 0
    """
    require_nonnegative(t, "t")
    require_positive(spacing, "spacing")
    if t == 0:
        return 1.0 if spacing <= 1.0 else 0.0
    return float(ncx2.cdf(1.0 / (2.0 * t), df=2, nc=spacing ** 2 / (2.0 * t)))


def adjacent_pair_frequency(t: float, trials: int, rng, spacing: float = 1.0) -> float:
    """Частота смежности двух шаров после независимых смещений"""
    gen = as_generator(rng)
    a = brownian_displacements(trials, t, gen)
    b = brownian_displacements(trials, t, gen)
    gap = np.array([spacing, 0.0]) + b - a
    return float(np.mean(np.einsum("ij,ij->i", gap, gap) <= 1.0))
