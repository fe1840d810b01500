"""
Команда отрисовки конфигураций в SVG
"""

import time
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from algorithms.estimators import LAMBDA_C_REFERENCE
from algorithms.utils import RngStream
from cli.exit_codes import ExitCode
from cli.schemas import GlobalOptions
from cli.services import ReportService, RenderService
from cli.utils import console, format_time, print_error, print_success, print_warning


def render(
    ctx: typer.Context,
    process: Optional[str] = typer.Option(None, "--process", help="triangular, square, poisson, figure2 или fixture"),
    t: Optional[float] = typer.Option(None, "--t", help="Время смещения"),
    window: Optional[float] = typer.Option(None, "--window", help="Сторона окна"),
    side: Optional[float] = typer.Option(None, "--side", help="Сторона шестиугольников (fixture)"),
    intensity: Optional[float] = typer.Option(None, "--intensity", help="Интенсивность (poisson)"),
    file: Optional[str] = typer.Option(None, "--file", help="Имя SVG файла в каталоге результатов"),
    points_csv: bool = typer.Option(False, "--points", help="Записать центры шаров в CSV"),
):
    """
    Статическое изображение: шары, стороны шестиугольников, наибольшая компонента

    Примеры:

      percopack render --process triangular --window 20
      percopack render --process fixture --t 0.01
      percopack render --process figure2 --window 12
    """
    opts: GlobalOptions = ctx.obj
    start = time.perf_counter()
    try:
        run = opts.resolve(
            "render",
            {
                'process': "triangular", 't': 0.0, 'window': 20.0, 'side': 10.0,
                'intensity': LAMBDA_C_REFERENCE, 'file': "render.svg",
            },
            {
                'process': process, 't': t, 'window': window, 'side': side,
                'intensity': intensity, 'file': file,
            },
        )
        params = run.params
        if params['t'] < 0:
            raise ValueError(f"t должно быть неотрицательным, получено {params['t']}")

        rng = RngStream(opts.seed).substream(3)
        scene = RenderService.build_scene(
            params['process'], params['t'], params['window'], rng,
            intensity=params['intensity'], side=params['side'],
        )
        out = Path(opts.out)
        path = RenderService.write_svg(scene, out / params['file'])
        if points_csv:
            ReportService.write_points(scene.points, out / (Path(params['file']).stem + "_points.csv"))
        wall = time.perf_counter() - start
        report = ReportService.generic_report(
            run, params, scene.summary(), wall_time=wall if opts.timing else None,
        )
        ReportService.write_report(report, out / (Path(params['file']).stem + ".json"))

    except typer.Exit:
        raise
    except (ValidationError, ValueError) as e:
        print_error(f"Некорректные параметры: {e}")
        raise typer.Exit(code=ExitCode.INVALID_INPUT)
    except OSError as e:
        print_error(f"Ошибка записи: {e}")
        raise typer.Exit(code=ExitCode.FILE_WRITE_ERROR)
    except RuntimeError as e:
        print_error(f"Ошибка построения сцены: {e}")
        raise typer.Exit(code=ExitCode.GEOMETRY_ERROR)
    except KeyboardInterrupt:
        print_warning("Прервано пользователем")
        raise typer.Exit(code=ExitCode.OPERATION_CANCELLED)
    except Exception as e:
        print_error(f"Непредвиденная ошибка: {e}")
        raise typer.Exit(code=ExitCode.UNKNOWN_ERROR)

    print_success(f"Сохранено в {path}")
    console.print(f"Шаров: {scene.points.total_balls}, выделено узлов: {len(scene.highlight)}, время: {format_time(wall)}")
