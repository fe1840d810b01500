"""
Событие A_t для пары смежных шестиугольников

Три условия на момент t (центры шаров внутри X3 = H1 u H2):
1. путь от e3 к e3'
2. путь от e1 u e2 к e4 u e5
3. путь от e1' u e2' к e4' u e5'

Кандидаты: узлы треугольной решетки, лежащие в H1 u H2 в момент 0.
Для них все три условия в момент 0 выполнены по построению пары.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from algorithms.cluster import DisjointSet, IntersectionGraph, adjacency_edges
from algorithms.geometry import (
    HexPair,
    HexTessellation,
    HexUnion,
    Hexagon,
    Point,
    Segment,
    balls_touching_segments,
    hex_pair,
    tri_lattice_points,
)
from algorithms.geometry.consts import HEX_PAIR_SIDE
from algorithms.pointproc import PointSet, brownian_displacements
from algorithms.utils import DEFAULT_RADIUS, SQRT3, RngStream, require_nonnegative

logger = logging.getLogger(__name__)

# (X1, X2) для условий 1..3
CONDITIONS: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...] = (
    (("e3",), ("e3'",)),
    (("e1", "e2"), ("e4", "e5")),
    (("e1'", "e2'"), ("e4'", "e5'")),
)


# Структуры данных

@dataclass
class PairFixture:
    """Пара H1, H2 с кандидатами и предвычисленной картиной момента 0"""
    side: float
    pair: HexPair
    offset: Tuple[int, int]
    candidates: np.ndarray
    edges0: np.ndarray = field(repr=False)
    touch0: List[Tuple[np.ndarray, np.ndarray]] = field(repr=False)
    radius: float = DEFAULT_RADIUS

    @property
    def region(self) -> HexUnion:
        return self.pair.union

    @property
    def hexagons(self) -> Tuple[Hexagon, Hexagon]:
        return self.pair.h1, self.pair.h2

    @property
    def cells(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        q, r = self.offset
        return (q, r), (q, r - 1)

    @property
    def separation(self) -> float:
        """Расстояние между e3 и e3'"""
        return abs(self.pair.edges["e3"].a.y - self.pair.edges["e3'"].a.y)

    def condition_segments(self) -> List[Tuple[List[Segment], List[Segment]]]:
        return [
            (self.pair.edge_group(*src), self.pair.edge_group(*dst))
            for src, dst in CONDITIONS
        ]

    def node_keys(self) -> np.ndarray:
        """Индексы (i, j) узлов решетки: узел = i (1, 0) + j (1/2, sqrt(3)/2)"""
        j = np.rint(self.candidates[:, 1] / (0.5 * SQRT3)).astype(np.int64)
        i = np.rint(self.candidates[:, 0] - 0.5 * j).astype(np.int64)
        return np.column_stack((i, j))


@dataclass
class CrossingOutcome:
    """Результат одного испытания события A_t"""
    success: bool
    cond1: bool
    cond2: bool
    cond3: bool
    nodes_used: int
    t: float
    trial: int = 0
    seed: int = 0

    def __bool__(self) -> bool:
        return self.success

    def to_dict(self) -> dict:
        return {
            'trial': self.trial,
            'success': self.success,
            'cond1': self.cond1,
            'cond2': self.cond2,
            'cond3': self.cond3,
            'nodes_used': self.nodes_used,
        }


# Построение пары

def _translate(segment: Segment, dx: float, dy: float) -> Segment:
    return Segment(Point(segment.a.x + dx, segment.a.y + dy), Point(segment.b.x + dx, segment.b.y + dy))


def _shifted_pair(side: float, offset: Tuple[int, int]) -> HexPair:
    base = hex_pair(side)
    if offset == (0, 0):
        return base
    tessellation = HexTessellation(side)
    shift = tessellation.center_of([offset[0]], [offset[1]])[0] - tessellation.center_of([0], [0])[0]
    dx, dy = float(shift[0]), float(shift[1])
    h1 = Hexagon(Point(base.h1.center.x + dx, base.h1.center.y + dy), side)
    h2 = Hexagon(Point(base.h2.center.x + dx, base.h2.center.y + dy), side)
    edges = {label: _translate(seg, dx, dy) for label, seg in base.edges.items()}
    return HexPair(h1=h1, h2=h2, edges=edges)


def _evaluate(points: np.ndarray, fixture: PairFixture) -> Tuple[List[bool], int]:
    region = fixture.region
    inside = region.contains(points) if len(points) else np.zeros(0, dtype=bool)
    kept = points[inside]
    if len(kept) == 0:
        return [False, False, False], 0
    graph = IntersectionGraph(PointSet(kept, fixture.radius))
    results = []
    for x1, x2 in fixture.condition_segments():
        touch1 = balls_touching_segments(kept, fixture.radius, x1)
        touch2 = balls_touching_segments(kept, fixture.radius, x2)
        results.append(graph.connects(touch1, touch2))
    return results, int(len(kept))


def build_fixture(side: float = HEX_PAIR_SIDE, offset: Tuple[int, int] = (0, 0)) -> PairFixture:
    """
    Строит пару шестиугольников со списком кандидатов

    Args:
        side: сторона шестиугольников
        offset: сдвиг пары в осевых координатах разбиения (для непересекающихся пар)

    Returns:
        PairFixture

    Raises:
        ValueError: Если side <= 0
        RuntimeError: Если узел лежит на ребре или пересечение в момент 0 не выполнено
    """
    if not side > 0:
        raise ValueError(f"Сторона шестиугольника должна быть положительной: {side}")
    pair = _shifted_pair(float(side), tuple(offset))
    region = pair.union
    nodes = tri_lattice_points(region.bounds().padded(1.0))
    candidates = nodes[region.contains(nodes)]

    fixture = PairFixture(
        side=float(side), pair=pair, offset=tuple(offset), candidates=candidates,
        edges0=np.empty((0, 2), dtype=np.int64), touch0=[],
    )
    conditions, _ = _evaluate(candidates, fixture)
    if not all(conditions):
        raise RuntimeError(f"Пересечение в момент 0 не выполнено для стороны {side}: {conditions}")

    fixture.edges0 = adjacency_edges(candidates, fixture.radius)
    fixture.touch0 = [
        (balls_touching_segments(candidates, fixture.radius, x1),
         balls_touching_segments(candidates, fixture.radius, x2))
        for x1, x2 in fixture.condition_segments()
    ]
    logger.info(
        "Fixture built: side=%s offset=%s candidates=%d edges=%d",
        side, offset, len(candidates), len(fixture.edges0),
    )
    return fixture


# Испытания

def _evaluate_strict(moved: np.ndarray, fixture: PairFixture) -> Tuple[List[bool], int]:
    """Путь должен существовать одновременно в моменты 0 и t"""
    inside = fixture.region.contains(moved)
    edges = fixture.edges0
    diff = moved[edges[:, 0]] - moved[edges[:, 1]]
    alive = (
        (np.einsum("ij,ij->i", diff, diff) <= 4.0 * fixture.radius ** 2)
        & inside[edges[:, 0]] & inside[edges[:, 1]]
    )
    forest = DisjointSet(len(moved))
    forest.union_pairs(edges[alive])
    labels = forest.roots()

    results = []
    for (touch0_a, touch0_b), (x1, x2) in zip(fixture.touch0, fixture.condition_segments()):
        source = inside & touch0_a & balls_touching_segments(moved, fixture.radius, x1)
        target = inside & touch0_b & balls_touching_segments(moved, fixture.radius, x2)
        hit = bool(np.any(source) and np.any(target)
                   and np.intersect1d(labels[source], labels[target]).size)
        results.append(hit)
    return results, int(inside.sum())


def outcome_for_positions(
    fixture: PairFixture,
    moved: np.ndarray,
    t: float,
    strict_path: bool = False,
    trial: int = 0,
    seed: int = 0,
) -> CrossingOutcome:
    """Проверка трех условий для заданных положений кандидатов"""
    conditions, used = (_evaluate_strict if strict_path else _evaluate)(moved, fixture)
    return CrossingOutcome(
        success=all(conditions),
        cond1=conditions[0], cond2=conditions[1], cond3=conditions[2],
        nodes_used=used, t=t, trial=trial, seed=seed,
    )


def sample_A_t(
    fixture: PairFixture,
    t: float,
    rng,
    strict_path: bool = False,
) -> CrossingOutcome:
    """
    Одно испытание события A_t

    Кандидаты смещаются на броуновские смещения момента t; узлы, вышедшие
    из H1 u H2, не участвуют. Условие пересечения в момент 0 выполнено
    для пары по построению.

    Args:
        fixture: пара шестиугольников
        t: время
        rng: RngStream или Generator
        strict_path: требовать путь, существующий в оба момента

    Raises:
        ValueError: Если t < 0
    """
    require_nonnegative(t, "t")
    disp = brownian_displacements(len(fixture.candidates), t, rng)
    moved = fixture.candidates + disp
    trial = rng.stream_index if isinstance(rng, RngStream) else 0
    seed = rng.master_seed if isinstance(rng, RngStream) else 0
    return outcome_for_positions(fixture, moved, t, strict_path, trial, seed)


@dataclass
class ATSampler:
    """Сериализуемая функция испытания для пула процессов"""
    fixture: PairFixture
    t: float
    strict_path: bool = False

    def __call__(self, stream: RngStream) -> CrossingOutcome:
        return sample_A_t(self.fixture, self.t, stream, self.strict_path)


# Проверка 1-зависимости

@dataclass
class DependenceResult:
    """Совместные частоты двух индикаторов и их выборочная корреляция"""
    trials: int
    freq_a: float
    freq_b: float
    joint: float
    rho: float

    def to_dict(self) -> dict:
        return {
            'trials': self.trials,
            'freq_a': self.freq_a,
            'freq_b': self.freq_b,
            'joint': self.joint,
            'rho': self.rho,
        }


def _require_separated(fixture_a: PairFixture, fixture_b: PairFixture) -> None:
    cells_a = set(fixture_a.cells)
    cells_b = set(fixture_b.cells)
    if fixture_a.side != fixture_b.side:
        raise ValueError("Пары должны быть построены в одном разбиении")
    if cells_a != cells_b and cells_a & cells_b:
        raise ValueError(f"Пары {sorted(cells_a)} и {sorted(cells_b)} имеют общий шестиугольник")


@dataclass
class PairedSampler:
    """
    Испытание двух пар с общим полем смещений, заданным по узлам решетки

    Узел, входящий в обе пары, получает одно и то же смещение.
    """
    fixture_a: PairFixture
    fixture_b: PairFixture
    t: float

    def __post_init__(self):
        _require_separated(self.fixture_a, self.fixture_b)
        keys_a = self.fixture_a.node_keys()
        keys_b = self.fixture_b.node_keys()
        all_keys = np.concatenate((keys_a, keys_b))
        self.unique_keys, inverse = np.unique(all_keys, axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        self.index_a = inverse[:len(keys_a)]
        self.index_b = inverse[len(keys_a):]

    def __call__(self, stream: RngStream) -> Tuple[bool, bool]:
        field_ = brownian_displacements(len(self.unique_keys), self.t, stream)
        moved_a = self.fixture_a.candidates + field_[self.index_a]
        moved_b = self.fixture_b.candidates + field_[self.index_b]
        a = outcome_for_positions(self.fixture_a, moved_a, self.t).success
        b = outcome_for_positions(self.fixture_b, moved_b, self.t).success
        return a, b


def indicator_correlation(a: Sequence[bool], b: Sequence[bool]) -> float:
    """Выборочная корреляция двух индикаторов (1 для совпадающих рядов)"""
    xa = np.asarray(a, dtype=float)
    xb = np.asarray(b, dtype=float)
    if np.array_equal(xa, xb):
        return 1.0
    if xa.std() == 0 or xb.std() == 0:
        return 0.0
    return float(np.corrcoef(xa, xb)[0, 1])


def one_dependence_check(
    fixture_a: PairFixture,
    fixture_b: PairFixture,
    t: float,
    trials: int,
    rng: RngStream,
    trial_map=None,
) -> DependenceResult:
    """
    Корреляция индикаторов A_t двух пар без общих шестиугольников

    Args:
        fixture_a, fixture_b: пары (совпадающие пары допускаются)
        t: время
        trials: число испытаний
        rng: базовый поток; испытание k использует rng.with_index(k)
        trial_map: функция (sampler, streams) -> результаты, по умолчанию последовательно

    Raises:
        ValueError: Если пары имеют ровно один общий шестиугольник
    """
    require_nonnegative(t, "t")
    if trials < 2:
        raise ValueError(f"Нужно не меньше двух испытаний, получено {trials}")
    sampler = PairedSampler(fixture_a, fixture_b, t)
    streams = [rng.with_index(k) for k in range(trials)]
    if trial_map is None:
        pairs = [sampler(stream) for stream in streams]
    else:
        pairs = trial_map(sampler, streams)
    xa = np.array([p[0] for p in pairs], dtype=bool)
    xb = np.array([p[1] for p in pairs], dtype=bool)
    rho = indicator_correlation(xa, xb)
    logger.info("One-dependence check: trials=%d rho=%.4f", trials, rho)
    return DependenceResult(
        trials=trials,
        freq_a=float(xa.mean()),
        freq_b=float(xb.mean()),
        joint=float((xa & xb).mean()),
        rho=rho,
    )


def expected_candidate_count(side: float) -> float:
    """Плотность решетки, умноженная на площадь пары"""
    return (2.0 / SQRT3) * 3.0 * SQRT3 * side ** 2


def crossing_summary(outcomes: Sequence[CrossingOutcome]) -> Dict[str, float]:
    """Частоты условий по серии испытаний"""
    n = max(len(outcomes), 1)
    return {
        'success': sum(o.success for o in outcomes) / n,
        'cond1': sum(o.cond1 for o in outcomes) / n,
        'cond2': sum(o.cond2 for o in outcomes) / n,
        'cond3': sum(o.cond3 for o in outcomes) / n,
        'mean_nodes_used': sum(o.nodes_used for o in outcomes) / n,
    }
