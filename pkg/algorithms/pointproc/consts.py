"""
Константы точечных процессов
"""

# Метка времени исходного процесса
DEFAULT_TIME_LABEL = 0.0

# Окно возмущенных решеток расширяется на PADDING_SIGMAS стандартных отклонений
PADDING_SIGMAS = 6.0

# Конфигурация с суперпозицией шаров: период 6, девять позиций по 14 шаров
# и восемнадцать одиночных шаров. Координаты даны внутри плитки [0, 6) x [0, 6).
FIGURE2_TILE = 6.0
FIGURE2_SOLID_MULTIPLICITY = 14

FIGURE2_SOLIDS = (
    (1.5, 1.5), (3.0, 1.5), (4.5, 1.5),
    (1.5, 3.0), (3.0, 3.0), (4.5, 3.0),
    (1.5, 4.5), (3.0, 4.5), (4.5, 4.5),
)

FIGURE2_WHITES = (
    # середины горизонтальных звеньев
    (2.25, 1.5), (3.75, 1.5),
    (2.25, 3.0), (3.75, 3.0),
    (2.25, 4.5), (3.75, 4.5),
    # середины вертикальных звеньев
    (1.5, 2.25), (1.5, 3.75),
    (3.0, 2.25), (3.0, 3.75),
    (4.5, 2.25), (4.5, 3.75),
    # центры квадратных ячеек
    (2.25, 2.25), (3.75, 2.25),
    (2.25, 3.75), (3.75, 3.75),
    # боковые отростки
    (0.75, 3.0), (5.25, 3.0),
)

# Шаров на плитку: 9 * 14 + 18
FIGURE2_BALLS_PER_TILE = len(FIGURE2_SOLIDS) * FIGURE2_SOLID_MULTIPLICITY + len(FIGURE2_WHITES)
