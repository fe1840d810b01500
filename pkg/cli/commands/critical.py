"""
Команда оценки критической интенсивности и критического радиуса
"""

import time
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import TypeAdapter, ValidationError

from algorithms.estimators import LAMBDA_C_REFERENCE, estimate_lambda_c, estimate_r_c_of_t
from algorithms.estimators.estimators import DEFAULT_BISECTION_STEPS
from algorithms.utils import RngStream
from cli.exit_codes import ExitCode
from cli.schemas import GlobalOptions
from cli.services import ReportService, TrialService
from cli.utils import console, create_table, format_time, print_error, print_info, print_success, print_warning

MODES = ("lambda", "radius")


def critical(
    ctx: typer.Context,
    mode: Optional[str] = typer.Option(None, "--mode", help="lambda или radius"),
    boxes: Optional[List[float]] = typer.Option(None, "--boxes", help="Сторона квадрата (lambda, повторяемый флаг)"),
    box: Optional[float] = typer.Option(None, "--box", help="Сторона квадрата (radius)"),
    t: Optional[float] = typer.Option(None, "--t", help="Время смещения решетки (radius)"),
    lattice: Optional[str] = typer.Option(None, "--lattice", help="triangular или square (radius)"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Испытаний на точку"),
    steps: Optional[int] = typer.Option(None, "--steps", help="Шагов бисекции"),
    radius: Optional[float] = typer.Option(None, "--radius", help="Радиус шаров (lambda)"),
):
    """
    Бисекция уровня вероятности пересечения 1/2

    Записывает critical.json (вилка и дрейф по размерам) и critical_sweep.csv.
    Код выхода 2, если вилка не найдена.

    Примеры:

      percopack critical --mode lambda --boxes 20 --boxes 40
      percopack critical --mode radius --t 100
    """
    opts: GlobalOptions = ctx.obj
    start = time.perf_counter()
    try:
        run = opts.resolve(
            "critical",
            {
                'mode': "lambda", 'boxes': [20.0, 40.0], 'box': 50.0, 't': 0.0, 'lattice': "triangular",
                'trials': None, 'steps': DEFAULT_BISECTION_STEPS, 'radius': 0.5,
            },
            {
                'mode': mode, 'boxes': boxes, 'box': box, 't': t, 'lattice': lattice,
                'trials': trials, 'steps': steps, 'radius': radius,
            },
        )
        params = run.params
        if params['mode'] not in MODES:
            raise ValueError(f"Режим должен быть одним из {', '.join(MODES)}, получено {params['mode']}")
        if params['trials'] is None:
            params['trials'] = 1000 if params['mode'] == "lambda" else 200
        console.print(f"[dim]{run.serialized()} workers={opts.workers}[/dim]")

        rng = RngStream(opts.seed).substream(1)
        with TrialService(opts.workers, opts.chunk_size) as pool:
            if params['mode'] == "lambda":
                sides = TypeAdapter(List[float]).validate_python(params['boxes'])
                print_info(f"Бисекция lambda по квадратам {sides}")
                estimate = estimate_lambda_c(
                    rng, radius=params['radius'], box_sides=sides,
                    trials_per_probe=params['trials'], steps=params['steps'], trial_map=pool,
                )
            else:
                print_info(f"Бисекция r_c при t={params['t']:g}")
                estimate = estimate_r_c_of_t(
                    params['t'], rng, box_side=params['box'], trials_per_probe=params['trials'],
                    steps=params['steps'], lattice=params['lattice'], trial_map=pool,
                )

        result = estimate.to_dict()
        if params['mode'] == "lambda":
            lo, hi = estimate.bracket
            result['reference'] = LAMBDA_C_REFERENCE
            result['contains_reference'] = lo <= LAMBDA_C_REFERENCE <= hi

        wall = time.perf_counter() - start
        report = ReportService.generic_report(
            run, params, result,
            verdict="verified" if estimate.verified else "unverified",
            wall_time=wall if opts.timing else None,
        )
        out = Path(opts.out)
        ReportService.write_report(report, out / "critical.json")
        ReportService.write_sweep(estimate.probes, out / "critical_sweep.csv")

    except typer.Exit:
        raise
    except (ValidationError, ValueError) as e:
        print_error(f"Некорректные параметры: {e}")
        raise typer.Exit(code=ExitCode.INVALID_INPUT)
    except OSError as e:
        print_error(f"Ошибка записи: {e}")
        raise typer.Exit(code=ExitCode.FILE_WRITE_ERROR)
    except RuntimeError as e:
        print_error(f"Вилка не найдена: {e}")
        raise typer.Exit(code=ExitCode.BRACKET_NOT_FOUND)
    except KeyboardInterrupt:
        print_warning("Прервано пользователем")
        raise typer.Exit(code=ExitCode.OPERATION_CANCELLED)
    except Exception as e:
        print_error(f"Непредвиденная ошибка: {e}")
        raise typer.Exit(code=ExitCode.UNKNOWN_ERROR)

    table = create_table("Критическое значение", ["Размер", "Оценка", "Вилка"])
    for row in estimate.drift:
        table.add_row(f"{row['box_side']:g}", f"{row['point']:.6f}", f"[{row['lo']:.6f}, {row['hi']:.6f}]")
    console.print(table)
    console.print(f"Время: {format_time(wall)}")

    if estimate.verified:
        print_success(f"Оценка {estimate.parameter}: {estimate.point:.6f}")
    else:
        print_warning(f"Условие знака на концах вилки не подтверждено: {estimate.point:.6f}")
