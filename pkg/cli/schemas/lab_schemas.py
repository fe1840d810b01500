"""
Pydantic схемы параметров экспериментов lab

Значения по умолчанию задаются здесь; флаги команды и секция lab файла
конфигурации проверяются одной и той же моделью.
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from algorithms.estimators import LAMBDA_C_REFERENCE


class LabParams(BaseModel):
    """Базовая модель: неизвестные параметры отклоняются"""
    model_config = ConfigDict(extra="forbid")


class PathLawParams(LabParams):
    m: int = Field(3, ge=1)
    epsilon: float = Field(0.01, gt=0.0, lt=0.5)
    trials: int = Field(100000, gt=0)


class WellBehavedParams(LabParams):
    delta: float = Field(0.1, gt=0.0, le=1.0)
    t: float = Field(1.0, gt=0.0)
    trials: int = Field(100000, gt=0)


class ResidualParams(LabParams):
    deltas: List[float] = Field(default_factory=lambda: [0.25, 0.09, 0.04], min_length=1)
    t: float = Field(10000.0, gt=0.0)
    samples: int = Field(4, gt=0)


class EmptyHexagonParams(LabParams):
    t: float = Field(1.0, ge=0.0)
    k: float = Field(0.5, gt=0.0)
    side: Optional[float] = Field(None, gt=0.0)
    trials: int = Field(2000, gt=0)

    @model_validator(mode="after")
    def validate_side(self):
        if self.t == 0 and self.side is None:
            raise ValueError("side is required at t = 0")
        return self


class EdgePreservationParams(LabParams):
    s_list: List[float] = Field(default_factory=lambda: [0.001, 0.01, 0.1], min_length=1)
    trials: int = Field(1000, gt=0)
    shape: Literal["flower", "pair"] = "flower"
    coupled: bool = True


class FieldParams(LabParams):
    p: float = Field(0.9, ge=0.0, le=1.0)
    delta: float = Field(0.1, gt=0.0, le=1.0)
    t: float = Field(1.0, gt=0.0)
    cells: int = Field(100, gt=0)
    seeds: int = Field(100, gt=0)


class AdjacentPairParams(LabParams):
    t: float = Field(0.1, ge=0.0)
    spacing: float = Field(1.0, gt=0.0)
    trials: int = Field(100000, gt=0)


class Figure2Params(LabParams):
    ts: List[float] = Field(default_factory=lambda: [0.001, 1000.0], min_length=1)
    window: float = Field(60.0, gt=0.0)
    seeds: int = Field(50, gt=0)

    @field_validator('ts')
    @classmethod
    def validate_times(cls, v):
        if any(t < 0 for t in v):
            raise ValueError("times must be non-negative")
        return v


class SquareLatticeParams(LabParams):
    t: float = Field(0.01, ge=0.0)
    box: float = Field(20.0, gt=0.0)
    trials: int = Field(200, gt=0)


class OneDependenceParams(LabParams):
    side: float = Field(10.0, gt=0.0)
    t: float = Field(0.01, ge=0.0)
    trials: int = Field(500, gt=0)
    offset_q: int = 3
    offset_r: int = 0


class UnitRadiiParams(LabParams):
    lambda_c: float = Field(LAMBDA_C_REFERENCE, gt=0.0)


class JSizeParams(LabParams):
    deltas: List[float] = Field(default_factory=lambda: [1.0, 0.25, 0.1, 0.04], min_length=1)
