"""
Конфигурация приложения
"""
import os
from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Настройки приложения"""

    # Воспроизводимость и параллелизм
    DEFAULT_SEED: int = int(os.getenv("PERCOPACK_DEFAULT_SEED", "1"))
    DEFAULT_WORKERS: int = int(os.getenv("PERCOPACK_DEFAULT_WORKERS", str(os.cpu_count() or 1)))
    CHUNK_SIZE: int = int(os.getenv("PERCOPACK_CHUNK_SIZE", "64"))  # испытаний на задачу процесса

    # Настройки журнала
    LOG_LEVEL: str = os.getenv("PERCOPACK_LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("PERCOPACK_LOG_FILE", "logs/percopack.log")  # пусто - без файла
    LOG_MAX_BYTES: int = int(os.getenv("PERCOPACK_LOG_MAX_BYTES", "10485760"))  # 10 МБ
    LOG_BACKUP_COUNT: int = int(os.getenv("PERCOPACK_LOG_BACKUP_COUNT", "5"))

    # Сертификация порога
    MAX_TRIALS: int = int(os.getenv("PERCOPACK_MAX_TRIALS", "20000"))
    CONFIDENCE: float = float(os.getenv("PERCOPACK_CONFIDENCE", "0.9999"))
    THRESHOLD: float = float(os.getenv("PERCOPACK_THRESHOLD", "0.8639"))

    # Каталог результатов
    OUTPUT_DIR: str = os.getenv("PERCOPACK_OUTPUT_DIR", "results")


settings = Settings()
