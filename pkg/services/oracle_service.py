"""
Independent numerical references for the birth-death closed forms: the exact
extinction-time distribution of the linear chain, a uniformization solve of a
truncated generator, and a banded first-step solver for hitting probabilities.
"""
import logging
from typing import Callable

import numpy as np
from scipy import sparse
from scipy.linalg import solve_banded
from scipy.stats import poisson

logger = logging.getLogger(__name__)


def bdp_extinction_cdf_exact(beta: float, mu: float, l0: int, t):
    """
    P(T ≤ t | L₀ = l0) for the linear birth-death chain (birth β, death μ):
    [μ(e^{(μ−β)t} − 1) / (μe^{(μ−β)t} − β)]^{l0}, and (μt / (1 + μt))^{l0} at β = μ.
    """
    if beta < 0 or mu <= 0:
        raise ValueError("need beta >= 0 and mu > 0")
    if l0 < 0:
        raise ValueError("l0 must be nonnegative")
    ts = np.asarray(t, dtype=float)
    if np.any(ts < 0):
        raise ValueError("t must be nonnegative")

    r = mu - beta
    with np.errstate(over="ignore"):
        if r > 0:
            y = -np.expm1(-r * ts)
            single = mu * y / (r + beta * y)
        elif r < 0:
            x = np.expm1(r * ts)
            single = mu * x / (mu * x + r)
        else:
            single = mu * ts / (1.0 + mu * ts)
    values = np.power(single + 0.0, l0)
    return float(values) if values.ndim == 0 else values


def truncated_generator(beta: float, mu: float, alpha: float, truncation: int) -> sparse.csr_matrix:
    """Tridiagonal generator on {0..truncation}: 0 absorbing, no births out of the top state."""
    z = np.arange(truncation + 1, dtype=float)
    births = beta * z + alpha
    deaths = mu * z
    births[0] = deaths[0] = 0.0
    births[-1] = 0.0
    return sparse.diags(
        [deaths[1:], -(births + deaths), births[:-1]],
        offsets=[-1, 0, 1],
        format="csr",
    )


def uniformized_extinction_cdf(beta: float, mu: float, l0: int, t, alpha: float = 0.0,
                               truncation: int = 500, tol: float = 1e-10):
    """
    P(T ≤ t) for the first passage to 0 of a birth-death-immigration chain,
    by uniformization of the truncated generator. The Poisson series is cut
    where its remaining mass drops below `tol`.
    """
    if l0 < 0 or l0 > truncation:
        raise ValueError(f"l0 must lie in [0, {truncation}]")
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts < 0):
        raise ValueError("t must be nonnegative")

    q = truncated_generator(beta, mu, alpha, truncation)
    rate = float(-q.diagonal().min())
    if rate == 0.0 or l0 == 0:
        values = np.full(ts.shape, 1.0 if l0 == 0 else 0.0)
    else:
        step = (sparse.identity(truncation + 1, format="csr") + q / rate).T.tocsr()
        horizon = int(poisson.ppf(1.0 - tol, rate * ts.max())) + 1
        p = np.zeros(truncation + 1)
        p[l0] = 1.0
        absorbed = np.empty(horizon + 1)
        for k in range(horizon + 1):
            absorbed[k] = p[0]
            p = step @ p
        ks = np.arange(horizon + 1)
        values = np.array([
            absorbed[0] if s == 0 else poisson.pmf(ks, rate * s) @ absorbed for s in ts
        ])
        logger.debug("uniformization rate=%.6g terms=%d", rate, horizon + 1)
    return float(values[0]) if np.ndim(t) == 0 else values


def first_step_hitting_probability(birth: Callable[[int], float], death: Callable[[int], float],
                                   start: int, target: int, floor: int = 0) -> float:
    """
    Probability that a birth-death chain reaches `target` before `floor`,
    from the first-step equations (b+d)h_z = b·h_{z+1} + d·h_{z−1},
    h_floor = 0, h_target = 1, solved as a banded system.
    """
    if not floor <= start <= target or floor == target:
        raise ValueError(f"need floor <= start <= target and floor < target (got {floor}, {start}, {target})")
    if start == target:
        return 1.0
    if start == floor:
        return 0.0

    states = np.arange(floor + 1, target)
    b = np.array([birth(int(z)) for z in states], dtype=float)
    d = np.array([death(int(z)) for z in states], dtype=float)
    stuck = (b + d) == 0.0
    diag = np.where(stuck, 1.0, b + d)
    b = np.where(stuck, 0.0, b)
    d = np.where(stuck, 0.0, d)

    m = len(states)
    bands = np.zeros((3, m))
    bands[0, 1:] = -b[:-1]
    bands[1] = diag
    bands[2, :-1] = -d[1:]
    rhs = np.zeros(m)
    rhs[-1] = b[-1]
    h = solve_banded((1, 1), bands, rhs)
    return float(h[start - floor - 1])
