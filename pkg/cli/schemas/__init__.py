"""
Pydantic схемы конфигурации и отчетов
"""

from .config_schemas import COMMANDS, ConfigFile, GlobalOptions, RunConfig, merge_params
from .lab_schemas import LabParams
from .report_schemas import CheckResult, CIModel, Counts, LabReport, Report, VerifyReport

__all__ = [
    'COMMANDS', 'ConfigFile', 'GlobalOptions', 'RunConfig', 'merge_params',
    'LabParams',
    'CheckResult', 'CIModel', 'Counts', 'LabReport', 'Report', 'VerifyReport',
]
