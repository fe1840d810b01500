"""
Замкнутые оценки хвостов: Чернова для пуассоновского и биномиального
распределений и гауссов хвост
"""

import math
from typing import Tuple

from algorithms.utils import require_positive


def chernoff_poisson(lam: float, epsilon: float) -> Tuple[float, float]:
    """
    Оценки Чернова для X ~ Poisson(lam)

    Returns:
        (оценка P(X >= (1 + eps) lam), оценка P(X <= (1 - eps) lam))

    Raises:
        ValueError: Если lam <= 0 или eps вне (0, 1)
    """
    require_positive(lam, "lambda")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon должно лежать в (0, 1), получено {epsilon}")
    above = math.exp(-lam * epsilon ** 2 * (1.0 - epsilon / 3.0) / 2.0)
    below = math.exp(-lam * epsilon ** 2 / 2.0)
    return above, below


def chernoff_binomial(n: int, expectation: float, epsilon: float) -> float:
    """
    Оценка Хёфдинга-Чернова P(X >= (1 + eps) EX) <= exp(-2 eps^2 (EX)^2 / n)

    Raises:
        ValueError: Если n < 1, EX вне [0, n] или eps < 0
    """
    if n < 1:
        raise ValueError(f"n должно быть положительным, получено {n}")
    if not 0.0 <= expectation <= n:
        raise ValueError(f"Математическое ожидание должно лежать в [0, {n}], получено {expectation}")
    if not epsilon >= 0:
        raise ValueError(f"epsilon должно быть неотрицательным, получено {epsilon}")
    return math.exp(-2.0 * epsilon ** 2 * expectation ** 2 / n)


def gaussian_tail(sigma: float, radius: float) -> float:
    """
    Оценка P(Z >= R) <= sigma / (sqrt(2 pi) R) exp(-R^2 / (2 sigma^2)) для Z ~ N(0, sigma^2)

    Raises:
        ValueError: Если R < sigma
    """
    require_positive(sigma, "sigma")
    if radius < sigma:
        raise ValueError(f"Оценка требует R >= sigma, получено R={radius}, sigma={sigma}")
    return sigma / (math.sqrt(2.0 * math.pi) * radius) * math.exp(-radius ** 2 / (2.0 * sigma ** 2))
