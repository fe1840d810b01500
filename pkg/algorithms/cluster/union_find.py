"""
Система непересекающихся множеств (union-find)

Лес хранится в массиве numpy parent. Больший корень всегда подвешивается
к меньшему, поэтому корень множества есть его наименьший элемент.
Пакетное объединение обрабатывает все ребра раундами подвешивания
и сжатия путей удвоением указателей.
"""

from typing import Iterable, Tuple, Union

import numpy as np

Pairs = Union[np.ndarray, Iterable[Tuple[int, int]]]


class DisjointSet:
    """Лес непересекающихся множеств над элементами 0..n-1"""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"Размер должен быть неотрицательным: {n}")
        self.parent = np.arange(n, dtype=np.int64)
        self.count = n

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> int:
        parent = self.parent
        root = int(x)
        while parent[root] != root:
            root = int(parent[root])
        # сжатие пути
        while parent[x] != root:
            parent[x], x = root, int(parent[x])
        return root

    def union(self, a: int, b: int) -> bool:
        """
        Объединяет множества a и b

        Returns:
            True, если множества были различны
        """
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        self.count -= 1
        return True

    def _compress(self) -> None:
        """Удвоение указателей до тех пор, пока каждый элемент не указывает на корень"""
        parent = self.parent
        while True:
            grand = parent[parent]
            if np.array_equal(grand, parent):
                break
            parent = grand
        self.parent = parent

    def union_pairs(self, pairs: Pairs) -> None:
        """
        Пакетное объединение по списку ребер

        В каждом раунде все корни, соединенные ребром с меньшим корнем,
        подвешиваются к наименьшему такому корню, затем пути сжимаются.
        """
        edges = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if not len(edges):
            return
        self._compress()
        a, b = edges[:, 0], edges[:, 1]
        while True:
            ra, rb = self.parent[a], self.parent[b]
            differ = ra != rb
            if not np.any(differ):
                break
            a, b, ra, rb = a[differ], b[differ], ra[differ], rb[differ]
            np.minimum.at(self.parent, np.maximum(ra, rb), np.minimum(ra, rb))
            self._compress()
        self.count = int(np.count_nonzero(self.parent == np.arange(len(self.parent))))

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def roots(self) -> np.ndarray:
        """Корень каждого элемента"""
        self._compress()
        return self.parent.copy()
