from typing import Optional

from fastapi import Query

from models.enums import HitKind, LawShape
from schemas.law import AsymptoticLaw
from schemas.scaling import ScalingSpec


class ScalingQuery:
    """Power-law scaling of (λ, γ, I₀, R₀); exponents accept fractions like 1/6."""
    def __init__(
        self,
        gap_p: str = Query(..., description="1 − λ decays like N^(−p)"),
        gamma_q: str = Query(..., description="γ = c·N^(−q)"),
        gap_sign: int = Query(1, description="+1 for λ < 1, −1 for λ > 1"),
        gap_c: float = Query(1.0),
        gap_offset: float = Query(0.0),
        gamma_c: float = Query(1.0),
        i0_c: float = Query(1.0),
        i0_u: str = Query("0"),
        r0_c: float = Query(0.0),
        r0_v: str = Query("0"),
        r0_fraction: Optional[float] = Query(None),
    ):
        self.gap_p: str = gap_p
        self.gamma_q: str = gamma_q
        self.gap_sign: int = gap_sign
        self.gap_c: float = gap_c
        self.gap_offset: float = gap_offset
        self.gamma_c: float = gamma_c
        self.i0_c: float = i0_c
        self.i0_u: str = i0_u
        self.r0_c: float = r0_c
        self.r0_v: str = r0_v
        self.r0_fraction: Optional[float] = r0_fraction

    def to_spec(self) -> ScalingSpec:
        return ScalingSpec.model_validate({
            "lambda_gap": {"sign": self.gap_sign, "c": self.gap_c, "p": self.gap_p,
                           "offset": self.gap_offset},
            "gamma": {"c": self.gamma_c, "q": self.gamma_q},
            "i0": {"c": self.i0_c, "u": self.i0_u},
            "r0": {"c": self.r0_c, "v": self.r0_v, "fraction": self.r0_fraction},
        })


class LawQuery:
    """A limit law and the raw times to evaluate it at."""
    def __init__(
        self,
        shape: LawShape = Query(...),
        t: list[float] = Query(..., description="Raw times"),
        i0: Optional[int] = Query(None),
        a: Optional[float] = Query(None),
        time_scale: float = Query(1.0),
        time_shift: float = Query(0.0),
    ):
        self.shape: LawShape = shape
        self.t: list[float] = t
        self.i0: Optional[int] = i0
        self.a: Optional[float] = a
        self.time_scale: float = time_scale
        self.time_shift: float = time_shift

    def to_law(self) -> AsymptoticLaw:
        return AsymptoticLaw(shape=self.shape, i0=self.i0, a=self.a,
                             time_scale=self.time_scale, time_shift=self.time_shift)


class HitProbQuery:
    """Parameters of one of the hitting-probability formulas."""
    def __init__(
        self,
        kind: HitKind = Query(...),
        beta: Optional[float] = Query(None),
        start: Optional[int] = Query(None),
        barrier: Optional[int] = Query(None),
        alpha: Optional[float] = Query(None),
        mu: Optional[float] = Query(None),
        l: Optional[int] = Query(None),
        t0: Optional[float] = Query(None),
    ):
        self.kind: HitKind = kind
        self.beta: Optional[float] = beta
        self.start: Optional[int] = start
        self.barrier: Optional[int] = barrier
        self.alpha: Optional[float] = alpha
        self.mu: Optional[float] = mu
        self.l: Optional[int] = l
        self.t0: Optional[float] = t0
