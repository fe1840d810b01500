"""
Команда сертификации P(A_t) > 0.8639
"""

import time
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from algorithms.crossing import ATSampler, build_fixture, crossing_summary
from algorithms.estimators import Verdict, certify_threshold
from algorithms.geometry.consts import HEX_PAIR_SIDE
from algorithms.utils import RngStream
from cli.config import settings
from cli.exit_codes import VERDICT_CODES, ExitCode
from cli.schemas import GlobalOptions
from cli.services import ReportService, TrialService
from cli.utils import console, create_progress, create_table, format_time, print_error, print_info, print_success, print_warning


def _sensitivity(fixture, t: float, strict_path: bool, trials: int, rng: RngStream, trial_map) -> dict:
    """Частота при другом прочтении события на тех же потоках"""
    other = certify_threshold(
        ATSampler(fixture, t, not strict_path), rng,
        max_trials=trials, sequential=False, trial_map=trial_map,
    )
    return {'strict_path': not strict_path, 'trials': other.trials, 'phat': other.ci.phat}


def crossing(
    ctx: typer.Context,
    t: Optional[float] = typer.Option(None, "--t", help="Время броуновского смещения (по умолчанию 0.01)"),
    side: Optional[float] = typer.Option(None, "--side", help="Сторона шестиугольников (по умолчанию 50)"),
    confidence: Optional[float] = typer.Option(None, "--confidence", help="Уровень доверия (односторонний)"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="Порог вероятности"),
    max_trials: Optional[int] = typer.Option(None, "--max-trials", help="Наибольшее число испытаний"),
    fixed: bool = typer.Option(False, "--fixed", help="Выполнить все испытания без остановки"),
    strict_path: bool = typer.Option(False, "--strict-path", help="Путь должен существовать в оба момента"),
    per_trial: bool = typer.Option(False, "--per-trial", help="Записать CSV по испытаниям"),
):
    """
    Оценка P(A_t) и сравнение с порогом 1-зависимой перколяции

    Коды выхода: 0 - сертифицировано, 1 - опровергнуто, 2 - не решено.

    Примеры:

      percopack crossing --t 0.01
      percopack --seed 7 --workers 8 crossing --t 0.01 --per-trial
    """
    opts: GlobalOptions = ctx.obj
    start = time.perf_counter()
    try:
        run = opts.resolve(
            "crossing",
            {
                't': 0.01, 'side': HEX_PAIR_SIDE, 'confidence': settings.CONFIDENCE,
                'threshold': settings.THRESHOLD, 'max_trials': settings.MAX_TRIALS,
                'sequential': True, 'strict_path': False,
            },
            {
                't': t, 'side': side, 'confidence': confidence, 'threshold': threshold,
                'max_trials': max_trials,
                'sequential': False if fixed else None,
                'strict_path': True if strict_path else None,
            },
        )
        params = run.params
        if params['t'] < 0:
            raise ValueError(f"t должно быть неотрицательным, получено {params['t']}")
        console.print(f"[dim]{run.serialized()} workers={opts.workers}[/dim]")

        fixture = build_fixture(params['side'])
        print_info(f"Пара шестиугольников: {len(fixture.candidates)} узлов-кандидатов")
        rng = RngStream(opts.seed).substream(0)
        sampler = ATSampler(fixture, params['t'], params['strict_path'])

        with TrialService(opts.workers, opts.chunk_size) as trials, create_progress() as progress:
            task = progress.add_task("Испытания A_t", total=params['max_trials'])
            certificate = certify_threshold(
                sampler, rng,
                threshold=params['threshold'],
                confidence=params['confidence'],
                max_trials=params['max_trials'],
                sequential=params['sequential'],
                batch_size=trials.batch_size,
                trial_map=trials,
                keep_outcomes=True,
                on_batch=lambda done, ok: progress.update(task, completed=done),
            )
            result = crossing_summary(certificate.outcomes)
            result['threshold'] = certificate.threshold
            if certificate.verdict is not Verdict.CERTIFIED:
                sens = _sensitivity(fixture, params['t'], params['strict_path'], certificate.trials, rng, trials)
                sens['delta'] = sens['phat'] - certificate.ci.phat
                result['sensitivity'] = sens

        wall = time.perf_counter() - start
        report = ReportService.certificate_report(
            certificate, run, params, result, wall if opts.timing else None,
        )
        out = Path(opts.out)
        ReportService.write_report(report, out / "crossing.json")
        if per_trial:
            ReportService.write_trials(certificate.outcomes, out / "crossing_trials.csv")

    except typer.Exit:
        raise
    except (ValidationError, ValueError) as e:
        print_error(f"Некорректные параметры: {e}")
        raise typer.Exit(code=ExitCode.INVALID_INPUT)
    except OSError as e:
        print_error(f"Ошибка записи: {e}")
        raise typer.Exit(code=ExitCode.FILE_WRITE_ERROR)
    except RuntimeError as e:
        print_error(f"Ошибка моделирования: {e}")
        raise typer.Exit(code=ExitCode.SIMULATION_ERROR)
    except KeyboardInterrupt:
        print_warning("Прервано пользователем")
        raise typer.Exit(code=ExitCode.OPERATION_CANCELLED)
    except Exception as e:
        print_error(f"Непредвиденная ошибка: {e}")
        raise typer.Exit(code=ExitCode.UNKNOWN_ERROR)

    table = create_table("Сертификация A_t", ["Параметр", "Значение"])
    table.add_row("t", f"{params['t']:g}")
    table.add_row("Испытаний", str(certificate.trials))
    table.add_row("Успехов", str(certificate.successes))
    table.add_row("Оценка", f"{certificate.ci.phat:.6f}")
    table.add_row("Нижняя граница", f"{certificate.ci.lower:.6f}")
    table.add_row("Верхняя граница", f"{certificate.ci.upper:.6f}")
    table.add_row("Порог", f"{certificate.threshold:.4f}")
    table.add_row("Время", format_time(wall))
    console.print(table)

    if certificate.verdict is Verdict.CERTIFIED:
        print_success("Сертифицировано: P(A_t) > порога")
    elif certificate.verdict is Verdict.REFUTED:
        print_error("Опровергнуто: P(A_t) < порога")
    else:
        print_warning("Не решено: интервал содержит порог")
    raise typer.Exit(code=VERDICT_CODES[certificate.verdict])
