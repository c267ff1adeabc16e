import math

from models.simulation import Trajectory
from schemas.process import SirsParams
from utils.errors import HypothesisError


def excursion_bound(params: SirsParams, i0: int, r0_frac: float, delta: float, t1: float) -> float:
    """
    Bound on P(sup_{t ≤ t1} |R_t − R₀| / N > 4δ) for a SIRS chain started from
    (I₀, r₀N):
    2·exp(−δ²N / (4(γ+1)t1)) + I₀ / ((1 − λ + λr₀/2)·δN).
    Requires 0 < t1 < δ/γ.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if i0 < 0:
        raise ValueError("i0 must be nonnegative")
    if not 0.0 <= r0_frac <= 1.0:
        raise ValueError("r0_frac must lie in [0, 1]")
    n, lam, gamma = params.n_pop, params.lam, params.gamma
    if not 0.0 < t1 < delta / gamma:
        raise HypothesisError(f"need 0 < t1 < δ/γ = {delta / gamma:.6g} (got t1={t1})")
    drift = 1.0 - lam + lam * r0_frac / 2.0
    if drift <= 0:
        raise HypothesisError(f"need 1 − λ + λr₀/2 > 0 (got {drift:.6g})")
    return 2.0 * math.exp(-delta**2 * n / (4.0 * (gamma + 1.0) * t1)) + i0 / (drift * delta * n)


def recovered_excursion(path: Trajectory, n_pop: int, t1: float, component: int = 1) -> float:
    """sup_{t ≤ t1} |R_t − R₀| / N along a recorded SIRS path."""
    r0 = path.states[0][component]
    largest = 0
    for t, state in zip(path.times, path.states):
        if t > t1:
            break
        largest = max(largest, abs(state[component] - r0))
    return largest / n_pop
