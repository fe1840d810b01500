"""
Точные биномиальные доверительные интервалы и сертификация порога

Интервал Клоппера-Пирсона строится по квантилям бета-распределения.
Последовательная проверка останавливается на первом испытании (в порядке
номеров), после которого односторонняя граница пересекла порог; поэтому
результат не зависит от числа процессов.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, List, Optional, Sequence

from scipy.stats import beta

from algorithms.utils import RngStream, require_probability

logger = logging.getLogger(__name__)

# Порог 1-зависимой перколяции связей на квадратной решетке
CROSSING_THRESHOLD = 0.8639
DEFAULT_CONFIDENCE = 0.9999
DEFAULT_MAX_TRIALS = 20000
DEFAULT_BATCH = 64

TrialMap = Callable[[Callable[[RngStream], Any], Sequence[RngStream]], List[Any]]


class Verdict(str, Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass
class BinomialCI:
    """Доверительный интервал для вероятности успеха"""
    successes: int
    trials: int
    confidence: float
    lower: float
    upper: float
    sided: str = "two"
    method: str = "clopper-pearson"

    @property
    def phat(self) -> float:
        return self.successes / self.trials

    def to_dict(self) -> dict:
        return {
            'lower': self.lower,
            'upper': self.upper,
            'confidence': self.confidence,
            'method': self.method,
            'sided': self.sided,
        }


def sequential_map(sampler: Callable[[RngStream], Any], streams: Sequence[RngStream]) -> List[Any]:
    """Последовательное выполнение испытаний в текущем процессе"""
    return [sampler(stream) for stream in streams]


def clopper_pearson(successes: int, trials: int, confidence: float = 0.95, sided: str = "two") -> BinomialCI:
    """
    Интервал Клоппера-Пирсона

    Args:
        successes: число успехов k
        trials: число испытаний n
        confidence: уровень доверия
        sided: 'two' (равнохвостый) или 'one' (каждая граница односторонняя на уровне confidence)

    Returns:
        BinomialCI

    Raises:
        ValueError: Если k вне [0, n], n < 1 или уровень вне (0, 1)
    """
    if trials < 1:
        raise ValueError(f"Число испытаний должно быть положительным, получено {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"Число успехов {successes} вне [0, {trials}]")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"Уровень доверия должен лежать в (0, 1), получено {confidence}")
    if sided not in ("two", "one"):
        raise ValueError(f"Неизвестный тип интервала: {sided}")

    alpha = 1.0 - confidence
    tail = alpha / 2.0 if sided == "two" else alpha
    k, n = successes, trials
    lower = 0.0 if k == 0 else float(beta.ppf(tail, k, n - k + 1))
    upper = 1.0 if k == n else float(beta.ppf(1.0 - tail, k + 1, n - k))
    return BinomialCI(k, n, confidence, lower, upper, sided)


def trials_to_certify(threshold: float, confidence: float) -> int:
    """Наименьшее n, при котором n успехов из n дают нижнюю границу выше порога"""
    return math.floor(math.log(1.0 - confidence) / math.log(threshold)) + 1


@dataclass
class Certificate:
    """Итог сертификации порога"""
    verdict: Verdict
    ci: BinomialCI
    threshold: float
    sequential: bool
    outcomes: List[Any] = field(default_factory=list, repr=False)

    @property
    def trials(self) -> int:
        return self.ci.trials

    @property
    def successes(self) -> int:
        return self.ci.successes


def _verdict(ci: BinomialCI, threshold: float) -> Verdict:
    if ci.lower > threshold:
        return Verdict.CERTIFIED
    if ci.upper < threshold:
        return Verdict.REFUTED
    return Verdict.INCONCLUSIVE


def certify_threshold(
    sampler: Callable[[RngStream], Any],
    rng: RngStream,
    threshold: float = CROSSING_THRESHOLD,
    confidence: float = DEFAULT_CONFIDENCE,
    max_trials: int = DEFAULT_MAX_TRIALS,
    sequential: bool = True,
    batch_size: int = DEFAULT_BATCH,
    trial_map: Optional[TrialMap] = None,
    keep_outcomes: bool = False,
    on_batch: Optional[Callable[[int, int], None]] = None,
) -> Certificate:
    """
    Проверка p > threshold по испытаниям sampler с односторонним интервалом

    Испытание k выполняется на потоке rng.with_index(k). В последовательном
    режиме проверка идет после каждого испытания; в режиме фиксированного n
    выполняются все max_trials испытаний.

    Args:
        sampler: функция RngStream -> результат (bool или объект с __bool__)
        rng: базовый поток
        threshold: порог в (0, 1)
        confidence: уровень доверия
        max_trials: наибольшее число испытаний
        sequential: останавливаться при пересечении порога
        batch_size: число испытаний в пакете
        trial_map: исполнитель пакета, по умолчанию последовательный
        keep_outcomes: сохранять результаты испытаний
        on_batch: вызывается после пакета с (выполнено, успехов)

    Returns:
        Certificate с вердиктом и интервалом

    Raises:
        ValueError: Если threshold вне (0, 1) или max_trials < 1
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"Порог должен лежать в (0, 1), получено {threshold}")
    require_probability(confidence, "confidence")
    if max_trials < 1:
        raise ValueError(f"max_trials должно быть положительным, получено {max_trials}")
    run = trial_map or sequential_map

    successes = 0
    done = 0
    outcomes: List[Any] = []
    ci: Optional[BinomialCI] = None
    verdict = Verdict.INCONCLUSIVE

    while done < max_trials:
        size = min(batch_size, max_trials - done)
        streams = [rng.with_index(done + k) for k in range(size)]
        results = run(sampler, streams)
        stop = False
        for result in results:
            done += 1
            successes += int(bool(result))
            if keep_outcomes:
                outcomes.append(result)
            if sequential:
                ci = clopper_pearson(successes, done, confidence, sided="one")
                verdict = _verdict(ci, threshold)
                if verdict is not Verdict.INCONCLUSIVE:
                    stop = True
                    break
        logger.debug("Certification progress: %d/%d successes", successes, done)
        if on_batch is not None:
            on_batch(done, successes)
        if stop:
            break

    if not sequential or ci is None:
        ci = clopper_pearson(successes, done, confidence, sided="one")
        verdict = _verdict(ci, threshold)

    logger.info(
        "Certification %s: %d/%d, one-sided [%.6f, %.6f] vs %.4f",
        verdict.value, successes, done, ci.lower, ci.upper, threshold,
    )
    return Certificate(verdict=verdict, ci=ci, threshold=threshold, sequential=sequential, outcomes=outcomes)
