"""
Корневое приложение percopack

percopack [--seed N --workers N --out DIR --config FILE --timing] <crossing|critical|lab <эксперимент>|render|verify> [флаги]
"""

import json
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from cli import __version__
from cli.commands import lab
from cli.commands.critical import critical
from cli.commands.crossing import crossing
from cli.commands.render import render
from cli.commands.verify import verify
from cli.config import settings
from cli.exit_codes import ExitCode
from cli.schemas import ConfigFile, GlobalOptions
from cli.utils import configure_logging, console, load_json_file, print_error

app = typer.Typer(
    help="Перколяция броуновски возмущенных упаковок кругов: сертификация, оценки, эксперименты",
    no_args_is_help=True,
)


def _version(value: bool):
    if value:
        console.print(f"percopack {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    ctx: typer.Context,
    seed: Optional[int] = typer.Option(None, "--seed", help="Главное зерно (u64)"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Число процессов"),
    out: Optional[Path] = typer.Option(None, "--out", help="Каталог результатов"),
    config: Optional[Path] = typer.Option(None, "--config", help="JSON файл конфигурации"),
    timing: bool = typer.Option(False, "--timing", help="Записывать время выполнения в отчеты"),
    version: bool = typer.Option(False, "--version", callback=_version, is_eager=True, help="Версия"),
):
    """
    Глобальные параметры: флаги важнее файла конфигурации, файл важнее окружения
    """
    configure_logging(settings.LOG_LEVEL, settings.LOG_FILE, settings.LOG_MAX_BYTES, settings.LOG_BACKUP_COUNT)

    try:
        config_file = ConfigFile(**load_json_file(config)) if config is not None else ConfigFile()
    except FileNotFoundError:
        raise typer.Exit(code=ExitCode.FILE_READ_ERROR)
    except (json.JSONDecodeError, ValidationError, TypeError) as e:
        print_error(f"Некорректный файл конфигурации: {e}")
        raise typer.Exit(code=ExitCode.INVALID_CONFIG)

    def pick(flag, from_file, default):
        if flag is not None:
            return flag
        return from_file if from_file is not None else default

    try:
        ctx.obj = GlobalOptions(
            seed=pick(seed, config_file.seed, settings.DEFAULT_SEED),
            workers=pick(workers, config_file.workers, settings.DEFAULT_WORKERS),
            chunk_size=settings.CHUNK_SIZE,
            out=str(pick(out, config_file.out, settings.OUTPUT_DIR)),
            timing=timing,
            config=config_file,
        )
    except ValidationError as e:
        print_error(f"Некорректные глобальные параметры: {e}")
        code = ExitCode.INVALID_SEED if any(err['loc'] == ('seed',) for err in e.errors()) else ExitCode.INVALID_INPUT
        raise typer.Exit(code=code)


app.command("crossing")(crossing)
app.command("critical")(critical)
app.add_typer(lab.app, name="lab")
app.command("render")(render)
app.command("verify")(verify)


if __name__ == "__main__":
    app()
