from typing import Optional

from pydantic import BaseModel

from models.enums import HitKind
from schemas.law import AsymptoticLaw


class LawPoint(BaseModel):
    t: float
    cdf: float
    pdf: float


class LawResponse(BaseModel):
    law: AsymptoticLaw
    points: list[LawPoint]


class HitProbResult(BaseModel):
    """A hitting probability (or bound) next to its linear-system value when one exists."""
    kind: HitKind
    value: float
    linear_system: Optional[float] = None
