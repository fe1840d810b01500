"""
Сервис формирования и записи отчетов
"""

import logging
from pathlib import Path
from typing import Iterable, Optional, Sequence

from algorithms.crossing import CrossingOutcome
from algorithms.estimators import BinomialCI, Certificate, ProbeResult
from algorithms.pointproc import PointSet
from cli import __version__
from cli.schemas import CIModel, Counts, RunConfig, Report
from cli.utils import save_csv_file, save_json_file

logger = logging.getLogger(__name__)

SWEEP_HEADER = ("param", "trials", "successes", "phat", "lo", "hi")
TRIALS_HEADER = ("trial", "success", "cond1", "cond2", "cond3", "nodes_used")
POINTS_HEADER = ("x", "y", "multiplicity")


class ReportService:
    """Отчеты JSON и таблицы CSV"""

    @staticmethod
    def ci_model(ci: BinomialCI) -> CIModel:
        return CIModel(lower=ci.lower, upper=ci.upper, confidence=ci.confidence,
                       method=ci.method, sided=ci.sided)

    @staticmethod
    def certificate_report(
        certificate: Certificate,
        config: RunConfig,
        params: dict,
        result: Optional[dict] = None,
        wall_time: Optional[float] = None,
    ) -> Report:
        """Отчет сертификации порога"""
        return Report(
            operation=config.command,
            params=params,
            counts=Counts(trials=certificate.trials, successes=certificate.successes),
            ci=ReportService.ci_model(certificate.ci),
            verdict=certificate.verdict.value,
            seed=config.master_seed,
            version=__version__,
            config=config.serialized(),
            result=result or {},
            wall_time=wall_time,
        )

    @staticmethod
    def generic_report(
        config: RunConfig,
        params: dict,
        result: dict,
        verdict: Optional[str] = None,
        wall_time: Optional[float] = None,
    ) -> Report:
        return Report(
            operation=config.command,
            params=params,
            verdict=verdict,
            seed=config.master_seed,
            version=__version__,
            config=config.serialized(),
            result=result,
            wall_time=wall_time,
        )

    @staticmethod
    def write_report(report, path: Path) -> Path:
        """
        Запись отчета в JSON

        Raises:
            OSError: Если файл нельзя записать
        """
        save_json_file(report.to_json_dict(), path)
        logger.info("Report written: %s", path)
        return path

    @staticmethod
    def write_sweep(probes: Sequence[ProbeResult], path: Path) -> Path:
        save_csv_file(SWEEP_HEADER, (p.to_row() for p in probes), path)
        return path

    @staticmethod
    def write_trials(outcomes: Iterable[CrossingOutcome], path: Path) -> Path:
        rows = (
            (o.trial, o.success, o.cond1, o.cond2, o.cond3, o.nodes_used)
            for o in outcomes
        )
        save_csv_file(TRIALS_HEADER, rows, path)
        return path

    @staticmethod
    def write_points(points: PointSet, path: Path) -> Path:
        save_csv_file(POINTS_HEADER, points.to_rows(), path)
        return path
