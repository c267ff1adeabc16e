from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.enums import EngineKind, ModelKind, TerminalReason
from schemas.engine import TauConfig
from schemas.scaling import ScalingSpec, tolerant_ceil
from settings import Setting


class RawSirs(BaseModel):
    """SIRS rates and initial counts fixed across population sizes."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(..., gt=0, alias="lambda")
    gamma: float = Field(..., gt=0)
    i0: int = Field(..., ge=0)
    r0: int = Field(0, ge=0)
    r0_fraction: Optional[float] = Field(None, gt=0, lt=1, description="R₀ = ⌈r₀·N⌉ instead of a fixed count")

    def recovered(self, n: int) -> int:
        if self.r0_fraction is not None:
            return tolerant_ceil(self.r0_fraction * n)
        return self.r0


class RawBdp(BaseModel):
    """Birth-death-immigration rates; the populations list holds initial sizes L₀."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(0.0, ge=0)
    mu: float = Field(1.0, ge=0)
    alpha: float = Field(0.0, ge=0)
    absorb_at_zero: bool = False
    limit_case: Optional[int] = Field(None, ge=1, le=5, description="Birth-death limit regime to compare against")


class StopConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    component: int = Field(0, ge=0)
    event_cap: Optional[int] = Field(None, gt=0)


class ExperimentConfig(BaseModel):
    """One experiment: a model, a list of population sizes and how to replicate."""
    model_config = ConfigDict(frozen=True)

    name: str = "experiment"
    scaling: Optional[ScalingSpec] = None
    sirs: Optional[RawSirs] = None
    bdp: Optional[RawBdp] = None
    populations: list[int]
    replications: int = Field(700, ge=1)
    engine: EngineKind = EngineKind.SSA
    tau: TauConfig = TauConfig()
    stop: StopConfig = StopConfig()
    seed: int = Field(default_factory=lambda: Setting.default_seed, ge=0)
    workers: int = Field(default_factory=lambda: Setting.default_workers, ge=1)
    output: Optional[str] = None
    paths: int = Field(0, ge=0, description="Sample paths written per population size")
    path_dt: float = Field(0.5, gt=0)

    @field_validator("populations")
    @classmethod
    def _increasing(cls, values: list[int]) -> list[int]:
        if not values:
            raise ValueError("at least one population size is required")
        if values[0] < 1:
            raise ValueError("population sizes must be positive")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("population sizes must be strictly increasing")
        return values

    @model_validator(mode="after")
    def _one_model(self) -> "ExperimentConfig":
        given = [s for s in (self.scaling, self.sirs, self.bdp) if s is not None]
        if len(given) != 1:
            raise ValueError("exactly one of [scaling], [sirs] or [bdp] must be given")
        return self

    @property
    def model(self) -> ModelKind:
        return ModelKind.BDP if self.bdp is not None else ModelKind.SIRS

    @property
    def output_dir(self) -> str:
        return self.output or f"{Setting.output_dir}/{self.name}"


class SampleSet(BaseModel):
    """Extinction-time samples for one population size, sorted by time."""
    n_pop: int
    engine: EngineKind
    config_fingerprint: str
    seed: int
    replication_index: list[int] = []
    times: list[float] = []
    reasons: list[TerminalReason] = []

    @model_validator(mode="after")
    def _aligned(self) -> "SampleSet":
        if not len(self.replication_index) == len(self.times) == len(self.reasons):
            raise ValueError("replication indices, times and reasons must have equal length")
        if any(b < a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be sorted ascending")
        return self

    def __len__(self) -> int:
        return len(self.times)

    @property
    def censored(self) -> int:
        return sum(1 for r in self.reasons if r is TerminalReason.CAPPED)

    def uncensored_times(self) -> np.ndarray:
        return np.array(
            [t for t, r in zip(self.times, self.reasons) if r is not TerminalReason.CAPPED],
            dtype=float,
        )


class Histogram(BaseModel):
    edges: list[float]
    values: list[float]


class PerPopulationReport(BaseModel):
    n: int
    sample_size: int
    censored: int
    reference: Optional[str] = None
    ks: Optional[float] = None
    quantiles: dict[str, float] = {}
    histogram_density: Optional[Histogram] = None
    histogram_cdf: Optional[Histogram] = None


class ComparisonReport(BaseModel):
    config_fingerprint: str
    seed: int
    engine: EngineKind
    per_n: list[PerPopulationReport] = []
    warnings: list[str] = []


class EngineTiming(BaseModel):
    engine: EngineKind
    replications: int
    median_wall_seconds: float
    events_per_unit_time: float
    mean_extinction_time: float


class BenchmarkReport(BaseModel):
    n: int
    timings: list[EngineTiming]
    ks_between_engines: float
    ks_pvalue: float
