"""
Сервис численных экспериментов lab

Каждый эксперимент зарегистрирован под именем вместе с pydantic моделью
параметров; значения по умолчанию берутся из модели.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Mapping, Optional, Type

import numpy as np

from algorithms.cluster import box_crossing
from algorithms.crossing import build_fixture, one_dependence_check
from algorithms.domination import (
    DominationParams,
    J_size_bounds,
    adjacent_pair_frequency,
    adjacent_pair_probability,
    build_J,
    empty_hexagon_probability,
    hexagonal_flower,
    monotone_edge_preservation,
    path_law_1_over_m_factorial,
    renormalization_field_demo,
    residual_sweep,
    well_behaved_lower_bound,
    well_behaved_monte_carlo,
)
from algorithms.estimators import (
    BinomialCI,
    TrialMap,
    clopper_pearson,
    square_lattice_crossing,
    unit_intensity_radii,
)
from algorithms.geometry import AABB
from algorithms.pointproc import PointSet, perturbed_figure2
from algorithms.utils import SQRT3, RngStream
from cli.schemas import merge_params
from cli.schemas.lab_schemas import (
    AdjacentPairParams,
    EdgePreservationParams,
    EmptyHexagonParams,
    Figure2Params,
    FieldParams,
    JSizeParams,
    LabParams,
    OneDependenceParams,
    PathLawParams,
    ResidualParams,
    SquareLatticeParams,
    UnitRadiiParams,
    WellBehavedParams,
)

logger = logging.getLogger(__name__)

# Уровень интервалов в отчетах lab (3 сигмы)
LAB_CONFIDENCE = 0.9973

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
REPORTED = "reported"


@dataclass
class LabOutcome:
    """Итог эксперимента до оформления отчета"""
    verdict: str
    analytic_value: Optional[float] = None
    successes: Optional[int] = None
    trials: Optional[int] = None
    ci: Optional[BinomialCI] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.verdict == INCONSISTENT


Runner = Callable[[Dict[str, Any], RngStream, Optional[TrialMap]], LabOutcome]


@dataclass
class Experiment:
    name: str
    help: str
    params: Type[LabParams]
    runner: Runner

    def defaults(self) -> Dict[str, Any]:
        return self.params().model_dump()


def _judge(ok: bool) -> str:
    return CONSISTENT if ok else INCONSISTENT


def _counts(successes: int, trials: int) -> Dict[str, Any]:
    return {
        'successes': successes,
        'trials': trials,
        'ci': clopper_pearson(successes, trials, LAB_CONFIDENCE),
    }


# Эксперименты

def _path_law(params, rng, trial_map) -> LabOutcome:
    result = path_law_1_over_m_factorial(params['m'], params['epsilon'], params['trials'], rng)
    return LabOutcome(
        verdict=_judge(result.consistent),
        analytic_value=result.expected,
        details=result.to_dict(),
        **_counts(result.successes, result.trials),
    )


def _well_behaved(params, rng, trial_map) -> LabOutcome:
    delta = params['delta']
    domination = DominationParams(delta=delta, t=params['t'])
    check = well_behaved_monte_carlo(domination, params['trials'], rng)
    floor = 1.0 - 5.0 * delta
    details = check.to_dict()
    details.update({
        'lower_bound': well_behaved_lower_bound(delta),
        'one_minus_5delta': floor,
        'mu': -math.log(check.analytic),
        'C': domination.C,
    })
    return LabOutcome(
        verdict=_judge(check.analytic >= floor and check.consistent),
        analytic_value=check.analytic,
        details=details,
        successes=check.accepted,
        trials=check.trials,
        ci=check.ci,
    )


def _residual(params, rng, trial_map) -> LabOutcome:
    rows = []
    skipped = []
    for index, delta in enumerate(params['deltas']):
        try:
            rows.extend(residual_sweep([delta], params['t'], params['samples'], rng.substream(index)))
        except ValueError as e:
            # mu > 1: оценка неприменима
            logger.warning("Residual sweep skipped delta=%s: %s", delta, e)
            skipped.append(delta)
    worst = max((row['max_ratio'] for row in rows), default=None)
    return LabOutcome(
        verdict=REPORTED,
        analytic_value=worst,
        details={'rows': rows, 'skipped': skipped, 'sup_ratio': worst},
    )


def _empty_hexagon(params, rng, trial_map) -> LabOutcome:
    result = empty_hexagon_probability(params['t'], params['trials'], rng, k=params['k'], side=params['side'])
    return LabOutcome(
        verdict=_judge(result.below_reference),
        analytic_value=result.poisson_reference,
        details=result.to_dict(),
        **_counts(result.empty, result.trials),
    )


def _edge_preservation(params, rng, trial_map) -> LabOutcome:
    if params['shape'] == "flower":
        points = hexagonal_flower()
    else:
        points = PointSet(np.array([[0.0, 0.0], [1.0, 0.0]]))
    coupled = bool(params['coupled'])
    result = monotone_edge_preservation(points, params['s_list'], params['trials'], rng, coupled)
    verdict = _judge(result.pathwise_monotone) if coupled else REPORTED
    return LabOutcome(verdict=verdict, details=result.to_dict())


def _field(params, rng, trial_map) -> LabOutcome:
    delta = params['delta']
    side = delta * math.sqrt(params['t'])
    cells = params['cells']
    window = AABB(0.0, 1.5 * side * cells, 0.0, SQRT3 * side * cells)
    summaries = [
        renormalization_field_demo(params['p'], delta, window, rng.substream(k), params['t'])
        for k in range(params['seeds'])
    ]
    spans = sum(s.spans for s in summaries)
    fractions = [s.largest_fraction for s in summaries]
    return LabOutcome(
        verdict=REPORTED,
        details={
            'p': params['p'],
            'cells': summaries[0].cells if summaries else 0,
            'mean_largest_fraction': float(np.mean(fractions)) if fractions else 0.0,
            'max_largest_fraction': max(fractions, default=0.0),
        },
        **_counts(spans, len(summaries)),
    )


def _adjacent_pair(params, rng, trial_map) -> LabOutcome:
    t, trials = params['t'], params['trials']
    analytic = adjacent_pair_probability(t, params['spacing'])
    frequency = adjacent_pair_frequency(t, trials, rng, params['spacing'])
    successes = int(round(frequency * trials))
    sigma = math.sqrt(analytic * (1.0 - analytic) / trials)
    return LabOutcome(
        verdict=_judge(abs(frequency - analytic) <= 3.0 * sigma + 1e-12),
        analytic_value=analytic,
        details={'t': t, 'frequency': frequency, 'below_half': analytic < 0.5},
        **_counts(successes, trials),
    )


def _figure2(params, rng, trial_map) -> LabOutcome:
    window = AABB.square(params['window'])
    seeds = params['seeds']
    rows = []
    for index, t in enumerate(params['ts']):
        hits = sum(
            box_crossing(perturbed_figure2(window, t, rng.substream(index).with_index(k)), window)
            for k in range(seeds)
        )
        rows.append({'t': t, 'crossings': int(hits), 'seeds': seeds, 'frequency': hits / seeds})
    if len(rows) >= 2:
        first, last = rows[0], rows[-1]
        verdict = _judge(first['frequency'] < 0.5 < last['frequency'])
    else:
        verdict = REPORTED
    return LabOutcome(verdict=verdict, details={'window': params['window'], 'rows': rows})


def _square_lattice(params, rng, trial_map) -> LabOutcome:
    t = params['t']
    result = square_lattice_crossing(t, params['box'], params['trials'], rng, trial_map)
    analytic = adjacent_pair_probability(t)
    return LabOutcome(
        verdict=REPORTED,
        analytic_value=analytic,
        details={'t': t, 'box': params['box'], 'frequency': result.phat, 'bond_probability': analytic},
        **_counts(result.successes, result.trials),
    )


def _one_dependence(params, rng, trial_map) -> LabOutcome:
    side = params['side']
    fixture_a = build_fixture(side)
    fixture_b = build_fixture(side, offset=(params['offset_q'], params['offset_r']))
    result = one_dependence_check(fixture_a, fixture_b, params['t'], params['trials'], rng, trial_map)
    details = result.to_dict()
    details['product'] = result.freq_a * result.freq_b
    return LabOutcome(verdict=REPORTED, analytic_value=result.rho, details=details)


def _unit_radii(params, rng, trial_map) -> LabOutcome:
    radii = unit_intensity_radii(params['lambda_c'])
    return LabOutcome(
        verdict=_judge(radii['lattice'] < radii['poisson']),
        analytic_value=radii['lattice'],
        details=radii,
    )


def _j_size(params, rng, trial_map) -> LabOutcome:
    rows = []
    for delta in params['deltas']:
        size = len(build_J(delta))
        low, high = J_size_bounds(delta)
        rows.append({'delta': delta, 'size': size, 'lower': low, 'upper': high, 'within': low <= size <= high})
    return LabOutcome(verdict=_judge(all(row['within'] for row in rows)), details={'rows': rows})


EXPERIMENTS: Dict[str, Experiment] = {
    e.name: e for e in (
        Experiment("path-law", "Закон 1/m! для путей на Z", PathLawParams, _path_law),
        Experiment("well-behaved", "Вероятность хорошего узла: сумма по J_i и связка",
                   WellBehavedParams, _well_behaved),
        Experiment("residual", "Остаточная интенсивность Lambda(x) по набору delta", ResidualParams, _residual),
        Experiment("empty-hexagon", "Пустой шестиугольник против пуассоновского эталона",
                   EmptyHexagonParams, _empty_hexagon),
        Experiment("edge-preservation", "Монотонная связка сохранения ребер",
                   EdgePreservationParams, _edge_preservation),
        Experiment("field", "Кластеры бернуллиевского поля ячеек", FieldParams, _field),
        Experiment("adjacent-pair", "Сохранение смежности двух соседних шаров", AdjacentPairParams, _adjacent_pair),
        Experiment("figure2", "Немонотонность пересечения для конфигурации с суперпозицией",
                   Figure2Params, _figure2),
        Experiment("square-lattice", "Пересечение квадрата возмущенной квадратной решеткой",
                   SquareLatticeParams, _square_lattice),
        Experiment("one-dependence", "Корреляция A_t для двух пар шестиугольников",
                   OneDependenceParams, _one_dependence),
        Experiment("unit-radii", "Критические радиусы при единичной интенсивности", UnitRadiiParams, _unit_radii),
        Experiment("j-size", "Размер окрестности J_i и границы", JSizeParams, _j_size),
    )
}


class LabService:
    """Реестр и запуск экспериментов"""

    @staticmethod
    def names() -> list:
        return sorted(EXPERIMENTS)

    @staticmethod
    def get(name: str) -> Experiment:
        """
        Raises:
            KeyError: Если эксперимент не зарегистрирован
        """
        if name not in EXPERIMENTS:
            raise KeyError(name)
        return EXPERIMENTS[name]

    @staticmethod
    def resolve_params(
        name: str,
        from_file: Mapping[str, Any] = None,
        flags: Mapping[str, Any] = None,
    ) -> Dict[str, Any]:
        """
        Параметры эксперимента: флаги > секция файла конфигурации > значения модели

        Args:
            name: Имя эксперимента
            from_file: Параметры из секции lab.<name> файла конфигурации
            flags: Значения флагов; None означает "не задан"

        Raises:
            KeyError: Если эксперимент не зарегистрирован
            ValidationError: Если параметр неизвестен или не проходит проверку
        """
        experiment = LabService.get(name)
        merged = merge_params({}, from_file or {}, flags or {})
        return experiment.params(**merged).model_dump()

    @staticmethod
    def run(
        name: str,
        params: Dict[str, Any],
        rng: RngStream,
        trial_map: Optional[TrialMap] = None,
    ) -> LabOutcome:
        experiment = LabService.get(name)
        logger.info("Lab experiment %s started: %s", name, params)
        outcome = experiment.runner(params, rng, trial_map)
        logger.info("Lab experiment %s finished: %s", name, outcome.verdict)
        return outcome
