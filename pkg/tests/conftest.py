"""
Общие фикстуры тестов
"""
import os

# журнал только в поток ошибок, один процесс по умолчанию
os.environ.setdefault("PERCOPACK_LOG_FILE", "")
os.environ.setdefault("PERCOPACK_DEFAULT_WORKERS", "1")

import pytest  # noqa: E402

from algorithms.crossing import build_fixture  # noqa: E402
from algorithms.utils import RngStream  # noqa: E402


@pytest.fixture
def rng():
    return RngStream(20240601)


@pytest.fixture(scope="session")
def pair10():
    """Пара шестиугольников со стороной 10 (около 600 кандидатов)"""
    return build_fixture(10.0)


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "results"
