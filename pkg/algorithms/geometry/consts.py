"""
Константы геометрии решеток и гексагональных разбиений
"""
from algorithms.utils import SQRT3

# Начало опорного ребра разбиения H_l: ребро от (1/2, -sqrt(3)/4) до (l + 1/2, -sqrt(3)/4)
ANCHOR_START = (0.5, -SQRT3 / 4.0)

# Сторона шестиугольников пары H1, H2
HEX_PAIR_SIDE = 50.0

# Узел решетки ближе этого расстояния к ребру считается лежащим на ребре
NODE_ON_EDGE_TOLERANCE = 1e-6

# Относительный допуск принадлежности замкнутому шестиугольнику (ошибки округления вершин)
MEMBERSHIP_RTOL = 1e-12

# Метки ребер пары: e - общее ребро, далее по часовой стрелке
H1_LABELS = ("e1", "e2", "e3", "e4", "e5")
H2_LABELS = ("e1'", "e2'", "e3'", "e4'", "e5'")

# Индексы вершин (V_k = центр + side * (cos 60k, sin 60k)) для ребер по часовой стрелке.
# Для H1 общее ребро e нижнее (V5 -> V4), для H2 верхнее (V2 -> V1).
H1_CLOCKWISE = ((4, 3), (3, 2), (2, 1), (1, 0), (0, 5))
H2_CLOCKWISE = ((1, 0), (0, 5), (5, 4), (4, 3), (3, 2))

# Соседи в осевых координатах (q, r) для шестиугольников с плоской вершиной
AXIAL_NEIGHBORS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))

# Высота ряда треугольной решетки, уменьшенная на 2^-40 относительно sqrt(3)/2:
# узлы соседних рядов остаются касающимися (|p - q|^2 <= 1) после округления
# координат до |y| < 2048
TRI_ROW_HEIGHT = 0.5 * SQRT3 * (1.0 - 2.0 ** -40)
