"""
Утилиты для работы с алгоритмами: воспроизводимые потоки случайных чисел
и общие проверки аргументов
"""

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

SQRT3 = math.sqrt(3.0)

# Плотность узлов треугольной решетки с ребром 1
TRIANGULAR_DENSITY = 2.0 / SQRT3

# Радиус шаров упаковки
DEFAULT_RADIUS = 0.5


@dataclass(frozen=True)
class RngStream:
    """
    Идентификатор независимого потока случайных чисел

    Поток однозначно задается парой (master_seed, stream_index) и
    необязательным ключом подпотока. Генератор: PCG64, инициализированный
    через SeedSequence(master_seed, spawn_key=(stream_index, *key)).
    Нормальные величины берутся методом standard_normal (ziggurat numpy),
    поэтому одинаковые потоки дают побитово одинаковые выборки.
    """
    master_seed: int
    stream_index: int = 0
    key: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.master_seed < 0 or self.master_seed >= 2 ** 64:
            raise ValueError(f"master_seed вне диапазона u64: {self.master_seed}")
        if self.stream_index < 0 or self.stream_index >= 2 ** 64:
            raise ValueError(f"stream_index вне диапазона u64: {self.stream_index}")

    def generator(self) -> np.random.Generator:
        """Создает новый генератор в начальном состоянии потока"""
        seq = np.random.SeedSequence(
            self.master_seed,
            spawn_key=(self.stream_index, *self.key),
        )
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, *key: int) -> "RngStream":
        """Подпоток с расширенным ключом (для вложенных экспериментов)"""
        return RngStream(self.master_seed, self.stream_index, self.key + tuple(key))

    def with_index(self, stream_index: int) -> "RngStream":
        """Тот же ключ, другой индекс испытания"""
        return RngStream(self.master_seed, stream_index, self.key)


def as_generator(rng) -> np.random.Generator:
    """Принимает RngStream или готовый Generator"""
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"Ожидался RngStream или numpy Generator, получено {type(rng).__name__}")


def require_probability(p: float, name: str = "p") -> None:
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ValueError(f"{name} должно лежать в [0, 1], получено {p}")


def require_nonnegative(value: float, name: str) -> None:
    if not value >= 0 or math.isinf(value):
        raise ValueError(f"{name} должно быть неотрицательным и конечным, получено {value}")


def require_positive(value: float, name: str) -> None:
    if not value > 0 or math.isinf(value):
        raise ValueError(f"{name} должно быть положительным и конечным, получено {value}")
