"""
Pydantic схемы конфигурации запуска
"""
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, Field, field_validator

COMMANDS = ("crossing", "critical", "lab", "render", "verify")


class RunConfig(BaseModel):
    """
    Полная конфигурация запуска

    Число процессов не сериализуется: отчеты не зависят от него.
    """
    command: str
    params: Dict[str, Any] = Field(default_factory=dict)
    master_seed: int
    workers: int = Field(default=1, exclude=True)
    out: str

    @field_validator('command')
    @classmethod
    def validate_command(cls, v):
        if v not in COMMANDS:
            raise ValueError(f"Command must be one of {', '.join(COMMANDS)}")
        return v

    @field_validator('master_seed')
    @classmethod
    def validate_seed(cls, v):
        if v < 0 or v >= 2 ** 64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        return v

    @field_validator('workers')
    @classmethod
    def validate_workers(cls, v):
        if v < 1:
            raise ValueError("workers must be positive")
        return v

    def serialized(self) -> dict:
        return self.model_dump(mode="json")


class ConfigFile(BaseModel):
    """Файл конфигурации: глобальные значения и параметры по командам"""
    seed: Optional[int] = None
    workers: Optional[int] = None
    out: Optional[str] = None
    crossing: Dict[str, Any] = Field(default_factory=dict)
    critical: Dict[str, Any] = Field(default_factory=dict)
    lab: Dict[str, Any] = Field(default_factory=dict)
    render: Dict[str, Any] = Field(default_factory=dict)
    verify: Dict[str, Any] = Field(default_factory=dict)

    def section(self, command: str) -> Dict[str, Any]:
        return dict(getattr(self, command, {}) or {})


def merge_params(
    defaults: Mapping[str, Any],
    from_file: Mapping[str, Any],
    flags: Mapping[str, Any],
) -> Dict[str, Any]:
    """Приоритет: флаги > файл конфигурации > значения по умолчанию; None во флагах не учитывается"""
    merged = dict(defaults)
    merged.update({k: v for k, v in from_file.items()})
    merged.update({k: v for k, v in flags.items() if v is not None})
    return merged


class GlobalOptions(BaseModel):
    """Глобальные параметры запуска, общие для всех команд"""
    seed: int
    workers: int = 1
    chunk_size: int = 64
    out: str
    timing: bool = False
    config: ConfigFile = Field(default_factory=ConfigFile)

    @field_validator('seed')
    @classmethod
    def validate_seed(cls, v):
        if v < 0 or v >= 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return v

    @field_validator('workers', 'chunk_size')
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError("must be positive")
        return v

    def run_config(self, command: str, params: Dict[str, Any]) -> RunConfig:
        return RunConfig(command=command, params=params, master_seed=self.seed,
                         workers=self.workers, out=self.out)

    def resolve(self, command: str, defaults: Mapping[str, Any], flags: Mapping[str, Any]) -> RunConfig:
        """RunConfig команды: флаги > секция файла конфигурации > значения по умолчанию"""
        return self.run_config(command, merge_params(defaults, self.config.section(command), flags))
