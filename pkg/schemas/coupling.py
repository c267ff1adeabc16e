from dataclasses import dataclass
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict, Field

from models.simulation import Trajectory
from schemas.process import BdiParams

RateFunction = Callable[[int], float]


@dataclass(frozen=True)
class CoupledPair:
    """
    Two birth-death chains on the naturals, the upper one meant to dominate:
    b_upper(z) >= b_lower(z) and d_upper(z) <= d_lower(z).
    """
    upper_birth: RateFunction
    upper_death: RateFunction
    lower_birth: RateFunction
    lower_death: RateFunction

    @classmethod
    def from_bdi(cls, upper: BdiParams, lower: BdiParams) -> "CoupledPair":
        return cls(
            upper_birth=lambda z: upper.beta * z + upper.alpha if z > 0 or not upper.absorb_at_zero else 0.0,
            upper_death=lambda z: upper.mu * z,
            lower_birth=lambda z: lower.beta * z + lower.alpha if z > 0 or not lower.absorb_at_zero else 0.0,
            lower_death=lambda z: lower.mu * z,
        )


class SandwichBarrier(BaseModel):
    """High-probability barriers a caller wants monitored along the SIRS path."""
    model_config = ConfigDict(frozen=True)

    i_max: Optional[int] = Field(None, ge=0, description="Barrier k for the infected count")
    r_max: Optional[int] = Field(None, ge=0, description="Barrier (e.g. 2m) for the recovered count")


@dataclass
class SandwichResult:
    """Three coupled paths: lower BDP, SIRS infected count (with R), upper BDP."""
    lower: Trajectory
    mid: Trajectory
    recovered: Trajectory
    upper: Trajectory
    ordered: bool
    domination_failed_at: Optional[float] = None
    barrier_exit_at: Optional[float] = None

    @property
    def domination_held(self) -> bool:
        return self.domination_failed_at is None

    def extinction_times(self) -> tuple[Optional[float], Optional[float], Optional[float]]:
        return (
            self.lower.hitting_time(0, 0),
            self.mid.hitting_time(0, 0),
            self.upper.hitting_time(0, 0),
        )
