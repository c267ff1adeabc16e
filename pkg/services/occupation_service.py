"""
Area under a subcritical linear birth-death path until extinction,
H(l) = ∫₀^T L_s ds with L₀ = l.
"""
import math

from utils.errors import HypothesisError


def _require_subcritical(beta: float, mu: float, l: int) -> None:
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if l < 0:
        raise ValueError("l must be nonnegative")
    if mu <= beta:
        raise HypothesisError(f"the occupation integral needs mu > beta (got mu={mu}, beta={beta})")


def integral_mean(beta: float, mu: float, l: int) -> float:
    """E H(l) = l / (μ − β)."""
    _require_subcritical(beta, mu, l)
    return l / (mu - beta)


def integral_laplace(beta: float, mu: float, l: int, a: float) -> float:
    """
    E e^(−aH(l)) = r^l with r the smaller root of βr² − (β+μ+a)r + μ = 0,
    written as 2μ / (β+μ+a + √((β+μ+a)² − 4βμ)) so that β = 0 needs no special case.
    """
    _require_subcritical(beta, mu, l)
    if a < 0:
        raise ValueError("a must be nonnegative")
    s = beta + mu + a
    root = 2.0 * mu / (s + math.sqrt(s * s - 4.0 * beta * mu))
    return math.exp(l * math.log(root))


def integral_tail_bound(beta: float, mu: float, l: int, delta: float) -> float:
    """Markov bound P(H(l) > δ) ≤ l / ((μ − β)δ); values above 1 are vacuous."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return integral_mean(beta, mu, l) / delta
