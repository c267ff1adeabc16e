import math
from typing import Optional

import numpy as np
from scipy.special import gammaln, logsumexp

from models.enums import HitKind
from schemas.analytics import HitProbResult
from services.oracle_service import first_step_hitting_probability
from utils.errors import HypothesisError

SERIES_BAND = 1e-6


def hit_prob_linear_bdp(beta: float, start: int, barrier: int) -> float:
    """
    Probability that a linear birth-death chain with birth rate β and death
    rate 1 ever reaches `barrier` from `start`:
    h_i = (β^−i − 1) / (β^−k − 1), which is i/k at β = 1.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if barrier < 1 or not 0 <= start <= barrier:
        raise ValueError(f"need 0 <= start <= barrier and barrier >= 1 (got {start}, {barrier})")
    if start == barrier:
        return 1.0
    if start == 0:
        return 0.0

    i, k = start, barrier
    x = -math.log(beta)
    if x == 0.0:
        return i / k
    if abs(1.0 - beta) < SERIES_BAND and k * abs(x) < 1e-3:
        # second-order expansion of expm1(ix)/expm1(kx) around x = 0
        c1 = (i - k) / 2.0
        c2 = (i * i - k * k) / 6.0 - k * (i - k) / 4.0
        return (i / k) * (1.0 + c1 * x + c2 * x * x)
    if x > 0:
        # β < 1: factor out e^{kx} so nothing overflows
        return math.exp((i - k) * x) * math.expm1(-i * x) / math.expm1(-k * x)
    return math.expm1(i * x) / math.expm1(k * x)


def hit_prob_immig_death(alpha: float, mu: float, l: int) -> float:
    """
    Probability that an immigration-death chain (immigration α, death μ per
    individual, absorbed at 0) started at l reaches 2l before 0:
    Σ_{k<l} (μ/α)^k k! / Σ_{k<2l} (μ/α)^k k!, summed in the log domain.
    """
    if alpha <= 0 or mu <= 0:
        raise ValueError("alpha and mu must be positive")
    if l < 1:
        raise ValueError("l must be at least 1")
    k = np.arange(2 * l)
    log_terms = k * math.log(mu / alpha) + gammaln(k + 1)
    return float(np.exp(logsumexp(log_terms[:l]) - logsumexp(log_terms)))


def hit_prob_id_time_bound(alpha: float, mu: float, l: int, t0: float) -> float:
    """
    Upper bound on P(sup_{t ≤ t0} L_t ≥ 2l) for the non-absorbing
    immigration-death chain started at l:
    (⌈t0⌉ + 1)·h_l + (eαt0 / (l⌈t0⌉))^(l⌈t0⌉)·e^(−αt0).
    The value may exceed 1, in which case it says nothing.
    """
    if alpha <= 0 or mu <= 0 or l < 1:
        raise ValueError("need alpha > 0, mu > 0 and l >= 1")
    if t0 <= 0:
        raise ValueError("t0 must be positive")
    if l * mu / alpha <= math.e:
        raise HypothesisError(
            f"the bound needs l·μ/α > e (got {l * mu / alpha:.6g}); "
            "the chain must drift back towards 0 from level l"
        )
    steps = math.ceil(t0)
    jumps = l * steps
    log_tail = jumps * (1.0 + math.log(alpha * t0) - math.log(jumps)) - alpha * t0
    return (steps + 1) * hit_prob_immig_death(alpha, mu, l) + math.exp(log_tail)


def evaluate_hitting(kind: HitKind, beta: Optional[float] = None, start: Optional[int] = None,
                     barrier: Optional[int] = None, alpha: Optional[float] = None,
                     mu: Optional[float] = None, l: Optional[int] = None,
                     t0: Optional[float] = None) -> HitProbResult:
    """Closed form for `kind`, with the first-step linear-system value alongside."""
    def need(**values):
        missing = [name for name, value in values.items() if value is None]
        if missing:
            raise ValueError(f"{kind.value} needs {', '.join(missing)}")

    if kind is HitKind.LINEAR_BDP:
        need(beta=beta, start=start, barrier=barrier)
        value = hit_prob_linear_bdp(beta, start, barrier)
        check = first_step_hitting_probability(lambda z: beta * z, lambda z: float(z), start, barrier)
        return HitProbResult(kind=kind, value=value, linear_system=check)
    if kind is HitKind.IMMIG_DEATH:
        need(alpha=alpha, mu=mu, l=l)
        value = hit_prob_immig_death(alpha, mu, l)
        check = first_step_hitting_probability(lambda z: alpha, lambda z: mu * z, l, 2 * l)
        return HitProbResult(kind=kind, value=value, linear_system=check)
    need(alpha=alpha, mu=mu, l=l, t0=t0)
    return HitProbResult(kind=kind, value=hit_prob_id_time_bound(alpha, mu, l, t0))
