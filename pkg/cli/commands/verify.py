"""
Команда запуска набора проверок
"""

import time
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError

from algorithms.utils import RngStream
from cli import __version__
from cli.exit_codes import ExitCode
from cli.schemas import GlobalOptions, VerifyReport
from cli.services import ReportService, TrialService, VerifyService
from cli.utils import console, create_table, format_time, print_error, print_success, print_warning


def verify(
    ctx: typer.Context,
    quick: bool = typer.Option(False, "--quick", help="Уменьшенные объемы выборок"),
    only: Optional[List[str]] = typer.Option(None, "--only", help="Запустить только указанные проверки"),
):
    """
    Набор проверок свойств: механика порога, ядра, законы, оракулы компонент

    Код выхода 1, если хотя бы одна проверка не пройдена.

    Примеры:

      percopack verify
      percopack --workers 4 verify --quick
      percopack verify --only path-law --only tail-bounds
    """
    opts: GlobalOptions = ctx.obj
    start = time.perf_counter()
    try:
        run = opts.resolve("verify", {'quick': False, 'only': []}, {'quick': True if quick else None, 'only': list(only) if only else None})
        params = run.params
        console.print(f"[dim]{run.serialized()} workers={opts.workers}[/dim]")

        table = create_table("Проверки", ["Проверка", "Итог", "Подробности"])
        with TrialService(opts.workers, opts.chunk_size) as pool:
            checks = VerifyService.run(
                RngStream(opts.seed).substream(4), pool,
                quick=params['quick'], only=list(params['only']) or None,
                on_check=lambda r: console.print(f"  {r.name}: {'ok' if r.passed else 'FAILED'}"),
            )
        for check in checks:
            table.add_row(check.name, "[green]ok[/green]" if check.passed else "[red]FAILED[/red]", check.detail)

        failed = sum(not c.passed for c in checks)
        wall = time.perf_counter() - start
        report = VerifyReport(
            checks=checks,
            passed=len(checks) - failed,
            failed=failed,
            seed=opts.seed,
            version=__version__,
            config=run.serialized(),
            wall_time=wall if opts.timing else None,
        )
        ReportService.write_report(report, Path(opts.out) / "verify.json")

    except typer.Exit:
        raise
    except (ValidationError, ValueError) as e:
        print_error(f"Некорректные параметры: {e}")
        raise typer.Exit(code=ExitCode.INVALID_INPUT)
    except OSError as e:
        print_error(f"Ошибка записи: {e}")
        raise typer.Exit(code=ExitCode.FILE_WRITE_ERROR)
    except KeyboardInterrupt:
        print_warning("Прервано пользователем")
        raise typer.Exit(code=ExitCode.OPERATION_CANCELLED)
    except Exception as e:
        print_error(f"Непредвиденная ошибка: {e}")
        raise typer.Exit(code=ExitCode.UNKNOWN_ERROR)

    console.print(table)
    console.print(f"Время: {format_time(wall)}")
    if failed:
        print_error(f"Не пройдено проверок: {failed} из {len(checks)}")
        raise typer.Exit(code=ExitCode.VERIFY_FAILED)
    print_success(f"Все проверки пройдены: {len(checks)}")
