from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.enums import CaseKind, LawShape

FINITE_SHAPES = (LawShape.CASE_1_1_FINITE, LawShape.CASE_1_2_FINITE)
RATE_SHAPES = (LawShape.CASE_1_2_FINITE, LawShape.CASE_1_2_GROWING)


class AsymptoticLaw(BaseModel):
    """
    Limit CDF of an extinction time. The limit variable is
    w = t / time_scale − time_shift for raw time t.
    """
    model_config = ConfigDict(frozen=True)

    shape: LawShape
    i0: Optional[int] = Field(None, ge=1, description="Initial count for the finite-I₀ shapes")
    a: Optional[float] = Field(None, gt=0, description="Rate constant of the Case 1.2 family")
    time_scale: float = Field(1.0, gt=0)
    time_shift: float = 0.0

    @model_validator(mode="after")
    def _shape_parameters(self) -> "AsymptoticLaw":
        if self.shape in FINITE_SHAPES and self.i0 is None:
            raise ValueError(f"{self.shape.value} needs an integer i0 >= 1")
        if self.shape in RATE_SHAPES and self.a is None:
            raise ValueError(f"{self.shape.value} needs a > 0")
        return self

    def to_limit_variable(self, t):
        return t / self.time_scale - self.time_shift


class CaseLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: CaseKind
    reason: Optional[str] = None

    def __str__(self) -> str:
        if self.kind is CaseKind.OUT_OF_SCOPE and self.reason:
            return f"out_of_scope({self.reason})"
        return self.kind.value

    @property
    def is_case(self) -> bool:
        return self.kind not in (CaseKind.BOUNDARY, CaseKind.OUT_OF_SCOPE)


class ConditionCheck(BaseModel):
    """One limit condition as an exponent margin; a zero margin on a strict inequality is a boundary."""
    model_config = ConfigDict(frozen=True)

    name: str
    margin: float
    holds: bool


class Classification(BaseModel):
    label: CaseLabel
    checks: list[ConditionCheck] = []
