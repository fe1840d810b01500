"""
Стандартизированные коды выхода для CLI
"""

from enum import IntEnum

from algorithms.estimators import Verdict


class ExitCode(IntEnum):
    """Коды выхода для CLI команд"""

    SUCCESS = 0
    CERTIFIED = 0

    # Итоги проверок (1-2)
    REFUTED = 1
    VERIFY_FAILED = 1
    INCONCLUSIVE = 2
    BRACKET_NOT_FOUND = 2
    UNKNOWN_EXPERIMENT = 2

    # Ошибки файловой системы (3-9)
    FILE_WRITE_ERROR = 3
    FILE_READ_ERROR = 4

    # Ошибки валидации (10-19)
    INVALID_INPUT = 10
    INVALID_CONFIG = 11
    INVALID_SEED = 12

    # Ошибки моделирования (20-29)
    SIMULATION_ERROR = 20
    GEOMETRY_ERROR = 21
    NUMERIC_ERROR = 22

    # Общие ошибки (40+)
    OPERATION_CANCELLED = 40
    UNKNOWN_ERROR = 99


VERDICT_CODES = {
    Verdict.CERTIFIED: ExitCode.CERTIFIED,
    Verdict.REFUTED: ExitCode.REFUTED,
    Verdict.INCONCLUSIVE: ExitCode.INCONCLUSIVE,
}
