"""
Команды численных экспериментов lab
"""

import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from pydantic import ValidationError

from algorithms.utils import RngStream
from cli import __version__
from cli.exit_codes import ExitCode
from cli.schemas import GlobalOptions, LabReport
from cli.services import LabService, ReportService, TrialService
from cli.utils import console, create_table, format_time, print_error, print_json, print_success, print_warning

app = typer.Typer(help="Численные эксперименты: доминирование, связки, немонотонность")


def _run_experiment(ctx: typer.Context, name: str, flags: Dict[str, Any]) -> None:
    """
    Общий запуск эксперимента: параметры, подпоток, отчет lab_<name>.json

    Raises:
        typer.Exit: С кодом ExitCode при ошибке или несогласованном результате
    """
    opts: GlobalOptions = ctx.obj
    start = time.perf_counter()
    try:
        params = LabService.resolve_params(name, opts.config.section("lab").get(name, {}), flags)
        run = opts.run_config("lab", {'experiment': name, **params})
        console.print(f"[dim]{run.serialized()} workers={opts.workers}[/dim]")

        index = LabService.names().index(name)
        with TrialService(opts.workers, opts.chunk_size) as pool:
            outcome = LabService.run(name, params, RngStream(opts.seed).substream(2, index), pool)

        wall = time.perf_counter() - start
        report = LabReport(
            name=name,
            params=params,
            analytic_value=outcome.analytic_value,
            empirical=(
                {'trials': outcome.trials, 'successes': outcome.successes}
                if outcome.trials is not None else None
            ),
            ci=ReportService.ci_model(outcome.ci) if outcome.ci is not None else None,
            verdict=outcome.verdict,
            details=outcome.details,
            seed=opts.seed,
            version=__version__,
            config=run.serialized(),
            wall_time=wall if opts.timing else None,
        )
        ReportService.write_report(report, Path(opts.out) / f"lab_{name}.json")

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

    print_json(report.to_json_dict()['details'], title=f"{name}: {outcome.verdict}")
    console.print(f"Время: {format_time(wall)}")
    if outcome.failed:
        print_error("Результат не согласуется с ожидаемым")
        raise typer.Exit(code=ExitCode.VERIFY_FAILED)
    print_success(f"Эксперимент {name} завершен")


@app.callback(invoke_without_command=True)
def experiments(ctx: typer.Context):
    """
    Без имени эксперимента печатает список с параметрами по умолчанию
    """
    if ctx.invoked_subcommand is not None:
        return
    table = create_table("Эксперименты", ["Имя", "Описание", "Параметры"])
    for name in LabService.names():
        experiment = LabService.get(name)
        defaults = ", ".join(f"{k}={v}" for k, v in experiment.defaults().items())
        table.add_row(name, experiment.help, defaults)
    console.print(table)


@app.command("path-law")
def path_law(
    ctx: typer.Context,
    m: Optional[int] = typer.Option(None, "--m", help="Число узлов пути"),
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="Полуширина равномерного смещения"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
):
    """
    Закон 1/m! для упорядоченных путей на Z

    Пример:

      percopack lab path-law --m 3 --trials 100000
    """
    _run_experiment(ctx, "path-law", {'m': m, 'epsilon': epsilon, 'trials': trials})


@app.command("well-behaved")
def well_behaved(
    ctx: typer.Context,
    delta: Optional[float] = typer.Option(None, "--delta", help="Параметр мозаики"),
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
):
    """
    Вероятность хорошего узла: аналитическая сумма и проверка связкой

    Пример:

      percopack lab well-behaved --delta 0.1
    """
    _run_experiment(ctx, "well-behaved", {'delta': delta, 't': t, 'trials': trials})


@app.command("residual")
def residual(
    ctx: typer.Context,
    deltas: Optional[List[float]] = typer.Option(None, "--delta", help="Значение delta (повторяемый флаг)"),
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Точек x на каждое delta"),
):
    """
    Остаточная интенсивность Lambda(x) относительно Psi_t(mu)

    Пример:

      percopack lab residual --delta 0.25 --delta 0.09 --t 10000
    """
    _run_experiment(ctx, "residual", {'deltas': deltas, 't': t, 'samples': samples})


@app.command("empty-hexagon")
def empty_hexagon(
    ctx: typer.Context,
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    k: Optional[float] = typer.Option(None, "--k", help="Сторона шестиугольника в единицах sqrt(t)"),
    side: Optional[float] = typer.Option(None, "--side", help="Явная сторона шестиугольника"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
):
    """
    Вероятность пустого шестиугольника против пуассоновского эталона
    """
    _run_experiment(ctx, "empty-hexagon", {'t': t, 'k': k, 'side': side, 'trials': trials})


@app.command("edge-preservation")
def edge_preservation(
    ctx: typer.Context,
    s_list: Optional[List[float]] = typer.Option(None, "--s", help="Момент времени (повторяемый флаг, по возрастанию)"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
    shape: Optional[str] = typer.Option(None, "--shape", help="flower или pair"),
    coupled: Optional[bool] = typer.Option(None, "--coupled/--independent", help="Общее броуновское движение"),
):
    """
    Сохранение ребер во времени при монотонной связке

    Пример:

      percopack lab edge-preservation --s 0.001 --s 0.01 --s 0.1
    """
    _run_experiment(ctx, "edge-preservation", {'s_list': s_list, 'trials': trials, 'shape': shape, 'coupled': coupled})


@app.command("field")
def field(
    ctx: typer.Context,
    p: Optional[float] = typer.Option(None, "--p", help="Вероятность открытой ячейки"),
    delta: Optional[float] = typer.Option(None, "--delta", help="Параметр мозаики"),
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    cells: Optional[int] = typer.Option(None, "--cells", help="Ячеек по стороне окна"),
    seeds: Optional[int] = typer.Option(None, "--seeds", help="Число реализаций"),
):
    """
    Кластеры бернуллиевского поля на мозаике шестиугольников
    """
    _run_experiment(ctx, "field", {'p': p, 'delta': delta, 't': t, 'cells': cells, 'seeds': seeds})


@app.command("adjacent-pair")
def adjacent_pair(
    ctx: typer.Context,
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    spacing: Optional[float] = typer.Option(None, "--spacing", help="Начальное расстояние между центрами"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
):
    """
    Сохранение смежности двух соседних шаров: формула и частота
    """
    _run_experiment(ctx, "adjacent-pair", {'t': t, 'spacing': spacing, 'trials': trials})


@app.command("figure2")
def figure2(
    ctx: typer.Context,
    ts: Optional[List[float]] = typer.Option(None, "--t", help="Момент времени (повторяемый флаг)"),
    window: Optional[float] = typer.Option(None, "--window", help="Сторона окна"),
    seeds: Optional[int] = typer.Option(None, "--seeds", help="Реализаций на момент времени"),
):
    """
    Немонотонность пересечения во времени для конфигурации с суперпозицией

    Пример:

      percopack lab figure2 --t 0.001 --t 1000
    """
    _run_experiment(ctx, "figure2", {'ts': ts, 'window': window, 'seeds': seeds})


@app.command("square-lattice")
def square_lattice(
    ctx: typer.Context,
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    box: Optional[float] = typer.Option(None, "--box", help="Сторона квадрата"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
):
    """
    Пересечение квадрата возмущенной квадратной решеткой
    """
    _run_experiment(ctx, "square-lattice", {'t': t, 'box': box, 'trials': trials})


@app.command("one-dependence")
def one_dependence(
    ctx: typer.Context,
    side: Optional[float] = typer.Option(None, "--side", help="Сторона окна пары шестиугольников"),
    t: Optional[float] = typer.Option(None, "--t", help="Время"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Число испытаний"),
    offset_q: Optional[int] = typer.Option(None, "--offset-q", help="Сдвиг второй пары по оси q"),
    offset_r: Optional[int] = typer.Option(None, "--offset-r", help="Сдвиг второй пары по оси r"),
):
    """
    Корреляция событий A_t для двух пар шестиугольников
    """
    _run_experiment(ctx, "one-dependence", {
        'side': side, 't': t, 'trials': trials, 'offset_q': offset_q, 'offset_r': offset_r,
    })


@app.command("unit-radii")
def unit_radii(
    ctx: typer.Context,
    lambda_c: Optional[float] = typer.Option(None, "--lambda-c", help="Критическая интенсивность при r=1/2"),
):
    """
    Критические радиусы решетки и процесса Пуассона при единичной интенсивности
    """
    _run_experiment(ctx, "unit-radii", {'lambda_c': lambda_c})


@app.command("j-size")
def j_size(
    ctx: typer.Context,
    deltas: Optional[List[float]] = typer.Option(None, "--delta", help="Значение delta (повторяемый флаг)"),
):
    """
    Размер окрестности J_i и ее границы
    """
    _run_experiment(ctx, "j-size", {'deltas': deltas})
