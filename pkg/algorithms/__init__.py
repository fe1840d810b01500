"""
Вычислительное ядро: геометрия, точечные процессы, кластеры, событие A_t,
оценки и проверка стохастического доминирования
"""

from .crossing.crossing import build_fixture, sample_A_t
from .estimators.confidence import certify_threshold, clopper_pearson
from .estimators.estimators import estimate_lambda_c, estimate_r_c_of_t
from .utils import RngStream

__all__ = [
    'RngStream', 'build_fixture', 'certify_threshold', 'clopper_pearson',
    'estimate_lambda_c', 'estimate_r_c_of_t', 'sample_A_t',
]
