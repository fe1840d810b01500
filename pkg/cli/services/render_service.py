"""
Отрисовка конфигураций шаров в SVG

Сцена: шары, стороны шестиугольников и выделенная компонента. Вывод SVG
детерминирован: фиксированная соль идентификаторов, без даты в метаданных.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.collections import LineCollection, PatchCollection
from matplotlib.figure import Figure
from matplotlib.patches import Circle

from algorithms.cluster import IntersectionGraph
from algorithms.crossing import build_fixture, outcome_for_positions
from algorithms.estimators import LAMBDA_C_REFERENCE
from algorithms.geometry import AABB, Hexagon, Segment
from algorithms.pointproc import (
    PointSet,
    brownian_displacements,
    figure2_configuration,
    perturbed_figure2,
    perturbed_lattice,
    sample_poisson_pp,
)
from algorithms.utils import DEFAULT_RADIUS, RngStream

logger = logging.getLogger(__name__)

PROCESSES = ("triangular", "square", "poisson", "figure2", "fixture")

SVG_RC = {
    'svg.hashsalt': 'percopack',
    'svg.fonttype': 'none',
    'figure.dpi': 72,
    'font.size': 6,
}

BALL_COLOR = "#9ecae1"
HIGHLIGHT_COLOR = "#e6550d"
EDGE_COLOR = "#252525"


@dataclass
class RenderScene:
    """Что рисовать: шары, выделенные узлы, отрезки и подписи"""
    points: PointSet
    window: AABB
    highlight: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    segments: List[Segment] = field(default_factory=list)
    title: str = ""
    label_multiplicity: bool = False

    def summary(self) -> dict:
        return {
            'balls': self.points.total_balls,
            'nodes': len(self.points),
            'highlighted': int(len(self.highlight)),
            'segments': len(self.segments),
        }


def _hexagon_segments(hexagons: Sequence[Hexagon]) -> List[Segment]:
    return [segment for hexagon in hexagons for segment in hexagon.edges()]


def _largest_inside(points: PointSet, region) -> np.ndarray:
    """Индексы наибольшей компоненты среди узлов, лежащих в region"""
    if len(points) == 0:
        return np.empty(0, dtype=np.int64)
    inside = np.flatnonzero(region.contains(points.points))
    if not len(inside):
        return np.empty(0, dtype=np.int64)
    graph = IntersectionGraph(points.subset(inside))
    return inside[graph.largest_component()]


class RenderService:
    """Построение сцен и запись SVG"""

    @staticmethod
    def build_scene(
        process: str,
        t: float,
        window_side: float,
        rng: RngStream,
        radius: float = DEFAULT_RADIUS,
        intensity: float = LAMBDA_C_REFERENCE,
        side: float = 10.0,
    ) -> RenderScene:
        """
        Сцена для процесса process

        Args:
            process: triangular, square, poisson, figure2 или fixture
            t: время смещения
            window_side: сторона окна
            rng: поток
            radius: радиус шаров
            intensity: интенсивность для poisson
            side: сторона шестиугольников для fixture

        Raises:
            ValueError: Если процесс неизвестен
        """
        if process not in PROCESSES:
            raise ValueError(f"Неизвестный процесс: {process}. Допустимые: {', '.join(PROCESSES)}")
        window = AABB.square(window_side)

        if process in ("triangular", "square"):
            points = perturbed_lattice(process, window, t, rng, radius=radius)
            points = points.subset(window.contains(points.points))
            title = f"{process} lattice, t={t:g}"
        elif process == "poisson":
            points = sample_poisson_pp(window, intensity, rng, radius)
            title = f"Poisson, lambda={intensity:g}"
        elif process == "figure2":
            points = figure2_configuration(window, radius) if t == 0 else perturbed_figure2(window, t, rng, radius)
            title = f"superposed configuration, t={t:g}"
        else:
            return RenderService.fixture_scene(t, side, rng)

        return RenderScene(
            points=points,
            window=window,
            highlight=_largest_inside(points, window),
            title=title,
            label_multiplicity=bool(np.any(points.multiplicity > 1)),
        )

    @staticmethod
    def fixture_scene(t: float, side: float, rng: RngStream) -> RenderScene:
        """Пара шестиугольников после одного испытания A_t"""
        fixture = build_fixture(side)
        moved = fixture.candidates + brownian_displacements(len(fixture.candidates), t, rng)
        outcome = outcome_for_positions(fixture, moved, t)
        points = PointSet(moved, fixture.radius, t)
        bounds = fixture.region.bounds().padded(1.0)
        window = AABB.square(max(bounds.width, bounds.height), bounds.xmin, bounds.ymin)
        return RenderScene(
            points=points,
            window=window,
            highlight=_largest_inside(points, fixture.region),
            segments=_hexagon_segments(fixture.hexagons),
            title=f"hexagon pair, side={side:g}, t={t:g}, A_t={'yes' if outcome.success else 'no'}",
        )

    @staticmethod
    def draw(scene: RenderScene) -> Figure:
        figure = Figure(figsize=(6.0, 6.0))
        FigureCanvasAgg(figure)
        ax = figure.add_subplot(1, 1, 1)
        pts = scene.points.points
        r = scene.points.radius

        mask = np.zeros(len(pts), dtype=bool)
        mask[scene.highlight] = True
        for selected, color in ((~mask, BALL_COLOR), (mask, HIGHLIGHT_COLOR)):
            circles = [Circle((x, y), r) for x, y in pts[selected]]
            if circles:
                ax.add_collection(PatchCollection(
                    circles, facecolor=color, edgecolor=EDGE_COLOR, linewidth=0.2, alpha=0.8,
                ))

        if scene.segments:
            lines = [[(s.a.x, s.a.y), (s.b.x, s.b.y)] for s in scene.segments]
            ax.add_collection(LineCollection(lines, colors=EDGE_COLOR, linewidths=0.8))

        if scene.label_multiplicity:
            for (x, y), m in zip(pts, scene.points.multiplicity):
                if m > 1:
                    ax.text(x, y, str(int(m)), ha="center", va="center")

        w = scene.window
        ax.set_xlim(w.xmin - r, w.xmax + r)
        ax.set_ylim(w.ymin - r, w.ymax + r)
        ax.set_aspect("equal")
        ax.set_title(scene.title)
        return figure

    @staticmethod
    def write_svg(scene: RenderScene, path: Path) -> Path:
        """
        Запись сцены в SVG

        Raises:
            OSError: Если файл нельзя записать
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with matplotlib.rc_context(SVG_RC):
            figure = RenderService.draw(scene)
            figure.savefig(path, format="svg", metadata={'Date': None})
        logger.info("SVG written: %s (%d nodes)", path, len(scene.points))
        return path
