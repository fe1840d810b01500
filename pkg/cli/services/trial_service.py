"""
Параллельное выполнение испытаний Монте-Карло

Испытания делятся на пакеты по chunk_size и выполняются в пуле процессов.
Результаты собираются в порядке номеров испытаний, поэтому итог не зависит
от числа процессов и порядка завершения задач.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Optional, Sequence

from algorithms.utils import RngStream

logger = logging.getLogger(__name__)


def _run_chunk(sampler: Callable[[RngStream], Any], streams: Sequence[RngStream]) -> List[Any]:
    return [sampler(stream) for stream in streams]


class TrialService:
    """
    Исполнитель пакетов испытаний

    Используется как контекстный менеджер; при workers == 1 пул не создается.
    Экземпляр вызывается как TrialMap: (sampler, streams) -> результаты.
    """

    def __init__(self, workers: int = 1, chunk_size: int = 64):
        if workers < 1:
            raise ValueError(f"Число процессов должно быть положительным: {workers}")
        if chunk_size < 1:
            raise ValueError(f"Размер пакета должен быть положительным: {chunk_size}")
        self.workers = workers
        self.chunk_size = chunk_size
        self._executor: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> "TrialService":
        if self.workers > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.workers)
            logger.info("Worker pool started: %d processes", self.workers)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=exc_type is not None)
            self._executor = None

    def __call__(self, sampler: Callable[[RngStream], Any], streams: Sequence[RngStream]) -> List[Any]:
        streams = list(streams)
        if self._executor is None or len(streams) <= self.chunk_size:
            return _run_chunk(sampler, streams)

        futures = [
            self._executor.submit(_run_chunk, sampler, streams[i:i + self.chunk_size])
            for i in range(0, len(streams), self.chunk_size)
        ]
        results: List[Any] = []
        for future in futures:
            results.extend(future.result())
        return results

    @property
    def batch_size(self) -> int:
        """Испытаний на один вызов при последовательной проверке"""
        return self.chunk_size * self.workers
