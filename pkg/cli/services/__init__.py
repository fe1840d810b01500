"""
Сервисный слой для CLI команд
"""

from .lab_service import EXPERIMENTS, LabOutcome, LabService
from .render_service import RenderScene, RenderService
from .report_service import ReportService
from .trial_service import TrialService
from .verify_service import CHECKS, VerifyService

__all__ = [
    'CHECKS', 'EXPERIMENTS', 'LabOutcome', 'LabService', 'RenderScene', 'RenderService',
    'ReportService', 'TrialService', 'VerifyService',
]
