import math
from fractions import Fraction
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from schemas.process import SirsParams, SirsState


def _exponent(value):
    # TOML configs may write exponents as fractions, e.g. "1/6"
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return value


Exponent = Annotated[float, BeforeValidator(_exponent)]


def tolerant_ceil(x: float) -> int:
    """Ceiling that ignores floating-point noise just above an integer."""
    return math.ceil(x * (1.0 - 1e-12))


class LambdaGap(BaseModel):
    """1 − λ(N) = offset + sign·c·N^(−p)."""
    model_config = ConfigDict(frozen=True)

    sign: Literal[1, -1] = 1
    c: float = Field(..., gt=0)
    p: Exponent = Field(..., ge=0)
    offset: float = Field(0.0, ge=0)

    def at(self, n: int) -> float:
        return self.offset + self.sign * self.c * n ** (-self.p)

    @property
    def limit(self) -> float:
        return self.offset + (self.sign * self.c if self.p == 0 else 0.0)

    @property
    def decay(self) -> float:
        """Rate −Π(1−λ) at which the gap vanishes; inf when λ ≡ 1, 0 for a constant gap."""
        if self.p == 0 or self.offset > 0:
            return math.inf if self.limit == 0 else 0.0
        return self.p

    @property
    def direction(self) -> int:
        """+1 when eventually λ < 1, −1 when eventually λ > 1, 0 when λ ≡ 1."""
        if self.p > 0 and self.offset == 0:
            return self.sign
        return (self.limit > 0) - (self.limit < 0)

    @property
    def coefficient(self) -> float:
        """Leading constant of |1 − λ|."""
        if self.p == 0 or self.offset > 0:
            return abs(self.limit)
        return self.c


class GammaScaling(BaseModel):
    """γ(N) = c·N^(−q)."""
    model_config = ConfigDict(frozen=True)

    c: float = Field(..., gt=0)
    q: Exponent = Field(..., ge=0)

    def at(self, n: int) -> float:
        return self.c * n ** (-self.q)


class InfectedScaling(BaseModel):
    """I₀(N) = ⌈c·N^u⌉."""
    model_config = ConfigDict(frozen=True)

    c: float = Field(..., gt=0)
    u: Exponent = Field(0.0, ge=0, lt=1)

    def at(self, n: int) -> int:
        return tolerant_ceil(self.c * n ** self.u)


class RecoveredScaling(BaseModel):
    """R₀(N) = ⌈c·N^v⌉, or ⌈r₀·N⌉ when `fraction` is set."""
    model_config = ConfigDict(frozen=True)

    c: float = Field(0.0, ge=0)
    v: Exponent = Field(0.0, ge=0, lt=1)
    fraction: Optional[float] = Field(None, gt=0, lt=1)

    @model_validator(mode="after")
    def _one_form(self) -> "RecoveredScaling":
        if self.fraction is not None and self.c > 0:
            raise ValueError("give either a power law (c, v) or a macroscopic fraction, not both")
        return self

    @property
    def macroscopic(self) -> bool:
        return self.fraction is not None

    def at(self, n: int) -> int:
        if self.fraction is not None:
            return tolerant_ceil(self.fraction * n)
        if self.c == 0:
            return 0
        return tolerant_ceil(self.c * n ** self.v)


class ScalingSpec(BaseModel):
    """Power-law parameterization of (λ, γ, I₀, R₀) in the population size N."""
    model_config = ConfigDict(frozen=True)

    lambda_gap: LambdaGap
    gamma: GammaScaling
    i0: InfectedScaling
    r0: RecoveredScaling = RecoveredScaling()

    def lam(self, n: int) -> float:
        return 1.0 - self.lambda_gap.at(n)

    def instantiate(self, n: int) -> tuple[SirsParams, SirsState]:
        lam = self.lam(n)
        if lam <= 0:
            raise ValueError(f"λ({n}) = {lam} is not positive")
        params = SirsParams(n_pop=n, lam=lam, gamma=self.gamma.at(n))
        state = SirsState(i=self.i0.at(n), r=self.r0.at(n))
        return params, state.check_within(params)
