from pydantic import BaseModel, ConfigDict, Field, model_validator


class SirsParams(BaseModel):
    """Population size N, transmission rate λ and immunity-loss rate γ."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    n_pop: int = Field(..., ge=1, description="Population size N")
    lam: float = Field(..., gt=0, alias="lambda", description="Transmission rate λ")
    gamma: float = Field(..., gt=0, description="Immunity-loss rate γ")


class SirsState(BaseModel):
    """Infected and recovered counts (I, R)."""
    model_config = ConfigDict(frozen=True)

    i: int = Field(..., ge=0)
    r: int = Field(..., ge=0)

    def as_vector(self) -> tuple[int, int]:
        return (self.i, self.r)

    def check_within(self, params: SirsParams) -> "SirsState":
        if self.i + self.r > params.n_pop:
            raise ValueError(
                f"state (i={self.i}, r={self.r}) exceeds population size {params.n_pop}"
            )
        return self


class BdiParams(BaseModel):
    """Linear birth-death-immigration rates: birth β·x + α, death μ·x."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(0.0, ge=0, description="Per-individual birth rate β")
    mu: float = Field(0.0, ge=0, description="Per-individual death rate μ")
    alpha: float = Field(0.0, ge=0, description="Immigration rate α")
    absorb_at_zero: bool = False

    @model_validator(mode="after")
    def _not_all_zero(self) -> "BdiParams":
        if self.beta == 0 and self.mu == 0 and self.alpha == 0:
            raise ValueError("at least one of beta, mu, alpha must be positive")
        return self
