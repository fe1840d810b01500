"""
Pydantic схемы отчетов
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class CIModel(BaseModel):
    lower: float
    upper: float
    confidence: float
    method: str = "clopper-pearson"
    sided: str = "two"

    @field_validator('upper')
    @classmethod
    def validate_bounds(cls, v, info):
        lower = info.data.get('lower')
        if lower is not None and v < lower:
            raise ValueError("upper bound must not be below lower bound")
        return v


class Counts(BaseModel):
    trials: int
    successes: int

    @field_validator('successes')
    @classmethod
    def validate_successes(cls, v, info):
        trials = info.data.get('trials')
        if v < 0 or (trials is not None and v > trials):
            raise ValueError("successes must lie in [0, trials]")
        return v


class Report(BaseModel):
    """Отчет команды: JSON с отсортированными ключами"""
    operation: str
    params: Dict[str, Any] = Field(default_factory=dict)
    counts: Optional[Counts] = None
    ci: Optional[CIModel] = None
    verdict: Optional[str] = None
    seed: int
    version: str
    config: Dict[str, Any] = Field(default_factory=dict)
    result: Dict[str, Any] = Field(default_factory=dict)
    wall_time: Optional[float] = None

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)


class LabReport(BaseModel):
    """Отчет эксперимента lab"""
    name: str
    params: Dict[str, Any] = Field(default_factory=dict)
    analytic_value: Optional[float] = None
    empirical: Optional[Counts] = None
    ci: Optional[CIModel] = None
    verdict: str
    details: Dict[str, Any] = Field(default_factory=dict)
    seed: int
    version: str
    config: Dict[str, Any] = Field(default_factory=dict)
    wall_time: Optional[float] = None

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)


class CheckResult(BaseModel):
    """Одна проверка набора verify"""
    name: str
    passed: bool
    detail: str = ""


class VerifyReport(BaseModel):
    operation: str = "verify"
    checks: List[CheckResult]
    passed: int
    failed: int
    seed: int
    version: str
    config: Dict[str, Any] = Field(default_factory=dict)
    wall_time: Optional[float] = None

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)
