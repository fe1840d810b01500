"""
Оценка критической интенсивности и критического радиуса бисекцией
по вероятности пересечения квадрата

Вероятность пересечения 1/2 на конечном квадрате служит приближением
критического значения; по нескольким размерам квадрата сообщается дрейф.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algorithms.cluster import box_crossing
from algorithms.geometry import AABB
from algorithms.pointproc import perturbed_lattice, sample_poisson_pp
from algorithms.utils import DEFAULT_RADIUS, TRIANGULAR_DENSITY, RngStream, require_nonnegative, require_positive

from .confidence import TrialMap, clopper_pearson, sequential_map

logger = logging.getLogger(__name__)

# Оценка lambda_c для радиуса 1/2
LAMBDA_C_REFERENCE = 1.436

LAMBDA_BRACKET = (0.1, 10.0)
RADIUS_BRACKET = (0.25, 0.75)
DEFAULT_BISECTION_STEPS = 8
REPROBE_FACTOR = 4
MAX_WIDENINGS = 4
PROBE_CONFIDENCE = 0.95


# Испытания

@dataclass
class BoxCrossingSampler:
    """
    Испытание пересечения квадрата со стороной box_side

    process: 'poisson' (param = интенсивность) или 'triangular' / 'square'
    (param = радиус, решетка возмущена на время t).
    """
    process: str
    box_side: float
    param: float
    t: float = 0.0
    radius: float = DEFAULT_RADIUS
    direction: str = "horizontal"

    def __call__(self, stream: RngStream) -> bool:
        box = AABB.square(self.box_side)
        if self.process == "poisson":
            points = sample_poisson_pp(box, self.param, stream, self.radius)
        elif self.process in ("triangular", "square"):
            points = perturbed_lattice(self.process, box, self.t, stream, radius=self.param)
        else:
            raise ValueError(f"Неизвестный процесс: {self.process}")
        return box_crossing(points, box, self.direction)


@dataclass
class ProbeResult:
    """Одна точка развертки по параметру"""
    param: float
    trials: int
    successes: int
    lo: float
    hi: float
    box_side: float = 0.0

    @property
    def phat(self) -> float:
        return self.successes / self.trials

    def to_row(self) -> Tuple[float, int, int, float, float, float]:
        return self.param, self.trials, self.successes, self.phat, self.lo, self.hi


def probe(
    sampler: Callable[[RngStream], bool],
    param: float,
    trials: int,
    rng: RngStream,
    trial_map: Optional[TrialMap] = None,
    box_side: float = 0.0,
) -> ProbeResult:
    """Частота успеха sampler по trials испытаниям с 95% интервалом"""
    if trials < 1:
        raise ValueError(f"Число испытаний должно быть положительным, получено {trials}")
    run = trial_map or sequential_map
    results = run(sampler, [rng.with_index(k) for k in range(trials)])
    successes = sum(bool(r) for r in results)
    ci = clopper_pearson(successes, trials, PROBE_CONFIDENCE)
    logger.debug("Probe param=%.6f box=%s: %d/%d", param, box_side, successes, trials)
    return ProbeResult(param, trials, successes, ci.lower, ci.upper, box_side)


def square_lattice_crossing(
    t: float,
    box_side: float,
    trials: int,
    rng: RngStream,
    trial_map: Optional[TrialMap] = None,
) -> ProbeResult:
    """
    Частота пересечения квадрата возмущенной решеткой Z^2 из шаров радиуса 1/2

    Raises:
        ValueError: Если t < 0 или trials < 1
    """
    require_nonnegative(t, "t")
    sampler = BoxCrossingSampler("square", box_side, DEFAULT_RADIUS, t=t)
    return probe(sampler, DEFAULT_RADIUS, trials, rng, trial_map, box_side)


# Бисекция

@dataclass
class CriticalEstimate:
    """Оценка критического значения параметра"""
    parameter: str
    point: float
    bracket: Tuple[float, float]
    box_sides: List[float]
    trials_per_probe: int
    t: float = 0.0
    drift: List[Dict[str, float]] = field(default_factory=list)
    probes: List[ProbeResult] = field(default_factory=list, repr=False)
    verified: bool = True

    def to_dict(self) -> dict:
        return {
            'parameter': self.parameter,
            'point': self.point,
            'bracket': list(self.bracket),
            'box_sides': self.box_sides,
            'trials_per_probe': self.trials_per_probe,
            't': self.t,
            'drift': self.drift,
            'verified': self.verified,
        }


def bisect_half(
    factory: Callable[[float], Callable[[RngStream], bool]],
    bracket: Tuple[float, float],
    trials: int,
    rng: RngStream,
    steps: int = DEFAULT_BISECTION_STEPS,
    trial_map: Optional[TrialMap] = None,
    box_side: float = 0.0,
    floor: float = 0.0,
) -> Tuple[float, Tuple[float, float], List[ProbeResult], bool]:
    """
    Бисекция по параметру уровня частоты пересечения 1/2

    Концы исходного отрезка и итоговой вилки проверяются на 4-кратном числе
    испытаний; при нарушении условия знака итоговая вилка расширяется.

    Args:
        factory: param -> функция испытания
        bracket: исходный отрезок (lo, hi)
        trials: испытаний на точку
        rng: поток; точка номер k использует rng.substream(k)
        steps: число шагов бисекции
        trial_map: исполнитель испытаний
        box_side: размер квадрата для отчета
        floor: нижняя граница параметра при расширении

    Returns:
        (оценка, вилка, все пробы, выполнено ли условие знака на концах вилки)

    Raises:
        RuntimeError: Если на концах исходного отрезка условие знака не выполнено
    """
    probes: List[ProbeResult] = []
    counter = [0]

    def run(param: float, n: int) -> ProbeResult:
        result = probe(factory(param), param, n, rng.substream(counter[0]), trial_map, box_side)
        counter[0] += 1
        probes.append(result)
        return result

    lo, hi = bracket
    if run(lo, REPROBE_FACTOR * trials).phat >= 0.5 or run(hi, REPROBE_FACTOR * trials).phat <= 0.5:
        raise RuntimeError(f"Вилка не найдена на отрезке [{lo}, {hi}] для квадрата {box_side}")

    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if run(mid, trials).phat < 0.5:
            lo = mid
        else:
            hi = mid

    verified = False
    width = hi - lo
    for _ in range(MAX_WIDENINGS + 1):
        low_ok = run(lo, REPROBE_FACTOR * trials).phat < 0.5
        high_ok = run(hi, REPROBE_FACTOR * trials).phat > 0.5
        if low_ok and high_ok:
            verified = True
            break
        if not low_ok:
            lo = max(floor, lo - width, bracket[0])
        if not high_ok:
            hi = min(hi + width, bracket[1])
        width *= 2

    point = 0.5 * (lo + hi)
    logger.info("Bisection box=%s: point=%.6f bracket=[%.6f, %.6f] verified=%s", box_side, point, lo, hi, verified)
    return point, (lo, hi), probes, verified


def estimate_lambda_c(
    rng: RngStream,
    radius: float = DEFAULT_RADIUS,
    box_sides: Sequence[float] = (20.0, 40.0),
    trials_per_probe: int = 1000,
    steps: int = DEFAULT_BISECTION_STEPS,
    bracket: Tuple[float, float] = LAMBDA_BRACKET,
    trial_map: Optional[TrialMap] = None,
) -> CriticalEstimate:
    """
    Критическая интенсивность модели Буля с радиусом radius

    Raises:
        ValueError: Если размеры квадратов не возрастают
        RuntimeError: Если вилка не найдена
    """
    require_positive(radius, "radius")
    sides = [float(s) for s in box_sides]
    if not sides or any(b <= a for a, b in zip(sides, sides[1:])):
        raise ValueError(f"Размеры квадратов должны строго возрастать: {sides}")

    probes: List[ProbeResult] = []
    drift: List[Dict[str, float]] = []
    point, interval, verified = 0.0, bracket, True
    for index, side in enumerate(sides):
        def factory(lam: float, side=side) -> BoxCrossingSampler:
            return BoxCrossingSampler("poisson", side, lam, radius=radius)

        point, interval, box_probes, verified = bisect_half(
            factory, bracket, trials_per_probe, rng.substream(index), steps, trial_map, side,
        )
        probes.extend(box_probes)
        drift.append({'box_side': side, 'point': point, 'lo': interval[0], 'hi': interval[1]})

    return CriticalEstimate(
        parameter="lambda", point=point, bracket=interval, box_sides=sides,
        trials_per_probe=trials_per_probe, drift=drift, probes=probes, verified=verified,
    )


def estimate_r_c_of_t(
    t: float,
    rng: RngStream,
    box_side: float = 50.0,
    trials_per_probe: int = 200,
    steps: int = DEFAULT_BISECTION_STEPS,
    bracket: Tuple[float, float] = RADIUS_BRACKET,
    lattice: str = "triangular",
    trial_map: Optional[TrialMap] = None,
) -> CriticalEstimate:
    """
    Критический радиус решетки, возмущенной на время t

    Решетка перечисляется в окне, расширенном на 6 sqrt(t). При t = 0
    первая середина отрезка [0.25, 0.75] равна 0.5, где касающиеся шары
    пересекают квадрат, поэтому оценка не превосходит 0.5.

    Raises:
        ValueError: Если t < 0
        RuntimeError: Если вилка не найдена
    """
    require_nonnegative(t, "t")

    def factory(r: float) -> BoxCrossingSampler:
        return BoxCrossingSampler(lattice, box_side, r, t=t)

    point, interval, probes, verified = bisect_half(
        factory, bracket, trials_per_probe, rng, steps, trial_map, box_side,
    )
    return CriticalEstimate(
        parameter="radius", point=point, bracket=interval, box_sides=[float(box_side)],
        trials_per_probe=trials_per_probe, t=t,
        drift=[{'box_side': float(box_side), 'point': point, 'lo': interval[0], 'hi': interval[1]}],
        probes=probes, verified=verified,
    )


# Масштабирование

def scale_radius(lambda_from: float, r_from: float, lambda_to: float) -> float:
    """Радиус модели интенсивности lambda_to, эквивалентной модели (lambda_from, r_from): lambda r^2 = const"""
    require_positive(lambda_from, "lambda_from")
    require_positive(r_from, "r_from")
    require_positive(lambda_to, "lambda_to")
    return r_from * math.sqrt(lambda_from / lambda_to)


def unit_intensity_radii(lambda_c: float = LAMBDA_C_REFERENCE) -> Dict[str, float]:
    """
    Критические радиусы при единичной интенсивности

    Решетка, сжатая до единичной плотности, перколирует на половине шага;
    модель Буля перколирует при радиусе, пересчитанном из (lambda_c, 1/2).
    """
    lattice = scale_radius(TRIANGULAR_DENSITY, DEFAULT_RADIUS, 1.0)
    poisson = scale_radius(lambda_c, DEFAULT_RADIUS, 1.0)
    return {'lattice': lattice, 'poisson': poisson}
