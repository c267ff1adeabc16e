from pydantic import BaseModel, ConfigDict, Field


class TauConfig(BaseModel):
    """Modified tau-leaping controls."""
    model_config = ConfigDict(frozen=True)

    n_c: int = Field(200, ge=1, description="Critical-reaction threshold")
    epsilon: float = Field(0.02, gt=0, lt=1, description="Leap-condition error control")
    ssa_fallback_steps: int = Field(100, ge=1, description="Exact steps taken when a leap would be too short")
    ssa_switch_multiple: float = Field(10.0, gt=0, description="Leap only if tau >= multiple / a0")
