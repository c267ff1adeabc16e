"""
Closed-form limit laws of extinction times.

Every function takes raw time t (scalar or array) and maps it to the limit
variable w through the law's time_scale and time_shift. The finite- and
growing-I₀ shapes are supported on w > 0 and evaluate to 0 elsewhere; the
Gumbel shape is supported on the whole line.
"""
import math
from typing import Optional, Sequence

import numpy as np
from scipy.stats import gumbel_r

from models.enums import CaseKind, LawShape
from schemas.analytics import LawPoint, LawResponse
from schemas.law import AsymptoticLaw, CaseLabel
from schemas.scaling import ScalingSpec
from utils.errors import HypothesisError


def _as_output(values: np.ndarray, like):
    return float(values) if np.ndim(like) == 0 else values


def _limit_cdf(law: AsymptoticLaw, w: np.ndarray) -> np.ndarray:
    if law.shape is LawShape.GUMBEL:
        return gumbel_r.cdf(w)
    out = np.zeros_like(w)
    pos = w > 0
    wp = w[pos]
    with np.errstate(over="ignore", divide="ignore"):
        if law.shape is LawShape.CASE_1_1_FINITE:
            out[pos] = np.exp(-law.i0 * np.log1p(1.0 / wp))
        elif law.shape is LawShape.CASE_1_1_GROWING:
            out[pos] = np.exp(-1.0 / wp)
        else:
            g = law.a / np.expm1(law.a * wp)
            if law.shape is LawShape.CASE_1_2_FINITE:
                out[pos] = np.exp(-law.i0 * np.log1p(g))
            else:
                out[pos] = np.exp(-g)
    return out


def _limit_pdf(law: AsymptoticLaw, w: np.ndarray) -> np.ndarray:
    if law.shape is LawShape.GUMBEL:
        return gumbel_r.pdf(w)
    out = np.zeros_like(w)
    pos = w > 0
    wp = w[pos]
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if law.shape is LawShape.CASE_1_1_FINITE:
            out[pos] = law.i0 * np.exp(-(law.i0 + 1) * np.log1p(1.0 / wp)) / wp**2
        elif law.shape is LawShape.CASE_1_1_GROWING:
            out[pos] = np.exp(-1.0 / wp) / wp**2
        else:
            aw = law.a * wp
            g = law.a / np.expm1(aw)
            # −dg/dw = a² e^{aw} / (e^{aw} − 1)²
            dg = law.a**2 / (np.expm1(aw) * -np.expm1(-aw))
            if law.shape is LawShape.CASE_1_2_FINITE:
                out[pos] = law.i0 * np.exp(-(law.i0 + 1) * np.log1p(g)) * dg
            else:
                out[pos] = np.exp(-g) * dg
    return np.nan_to_num(out, nan=0.0)


def _limit_ppf(law: AsymptoticLaw, p: np.ndarray) -> np.ndarray:
    if law.shape is LawShape.GUMBEL:
        return gumbel_r.ppf(p)
    with np.errstate(divide="ignore", invalid="ignore"):
        neg_log = 0.0 - np.log(p)
        if law.shape is LawShape.CASE_1_1_FINITE:
            return 1.0 / np.expm1(neg_log / law.i0)
        if law.shape is LawShape.CASE_1_1_GROWING:
            return 1.0 / neg_log
        g = np.expm1(neg_log / law.i0) if law.shape is LawShape.CASE_1_2_FINITE else neg_log
        return np.log1p(law.a / g) / law.a


def asymptotic_cdf(law: AsymptoticLaw, t):
    """P(T ≤ t) under the limit law."""
    w = law.to_limit_variable(np.asarray(t, dtype=float))
    return _as_output(_limit_cdf(law, np.atleast_1d(w)).reshape(np.shape(w)), t)


def asymptotic_pdf(law: AsymptoticLaw, t):
    """Density of the limit law in raw time."""
    w = law.to_limit_variable(np.asarray(t, dtype=float))
    density = _limit_pdf(law, np.atleast_1d(w)).reshape(np.shape(w)) / law.time_scale
    return _as_output(density, t)


def asymptotic_ppf(law: AsymptoticLaw, p):
    """Raw time t with P(T ≤ t) = p under the limit law."""
    q = np.asarray(p, dtype=float)
    if np.any((q < 0) | (q > 1)):
        raise ValueError("probabilities must lie in [0, 1]")
    w = _limit_ppf(law, np.atleast_1d(q)).reshape(np.shape(q))
    return _as_output(law.time_scale * (w + law.time_shift), p)


def law_for_case(label: CaseLabel, spec: ScalingSpec, n: int) -> AsymptoticLaw:
    """Concrete limit law at population size n for a classified scaling."""
    if not label.is_case:
        raise ValueError(f"no limit law for label {label}")
    gap = spec.lambda_gap
    i0 = spec.i0.at(n)
    growing = spec.i0.u > 0
    kind = label.kind

    if kind is CaseKind.C1_1:
        if growing:
            return AsymptoticLaw(shape=LawShape.CASE_1_1_GROWING, time_scale=i0)
        return AsymptoticLaw(shape=LawShape.CASE_1_1_FINITE, i0=i0)

    if kind is CaseKind.C1_2:
        if growing:
            a = spec.i0.c * gap.coefficient
            return AsymptoticLaw(shape=LawShape.CASE_1_2_GROWING, a=a, time_scale=i0)
        # constant I₀: the per-individual gap is the rate of the limit law
        return AsymptoticLaw(shape=LawShape.CASE_1_2_FINITE, a=gap.coefficient, i0=i0)

    if kind is CaseKind.C1_3:
        gap_n = gap.at(n)
        return AsymptoticLaw(shape=LawShape.GUMBEL, time_scale=1.0 / gap_n,
                             time_shift=math.log(gap_n * i0))

    r0 = spec.r0.fraction
    a = gap.limit + (1.0 - gap.limit) * r0
    if kind is CaseKind.C2_1:
        return AsymptoticLaw(shape=LawShape.CASE_1_2_FINITE, a=a, i0=i0)
    return AsymptoticLaw(shape=LawShape.GUMBEL, time_scale=1.0 / a, time_shift=math.log(a * i0))


def bdp_limit_law(case_index: int, beta: float, mu: float, l0: int,
                        a_n: Optional[float] = None) -> AsymptoticLaw:
    """
    Limit law of a linear birth-death extinction time with birth β, death μ,
    start L₀, for the five regimes of the (μ − β, L₀) dichotomy.

    For regime 5, passing `a_n` (an a(N) ~ L₀(μ − β)) selects the normalization
    a(N)·T/L₀ − log(a(N)/μ) instead of (μ − β)T − log(L₀(1 − β/μ)).
    """
    if case_index not in (1, 2, 3, 4, 5):
        raise ValueError(f"invalid case index {case_index}: expected 1..5")
    if mu <= 0 or beta < 0:
        raise ValueError("need mu > 0 and beta >= 0")
    if l0 < 1:
        raise ValueError("initial size must be at least 1")
    gap = mu - beta
    if case_index in (2, 4, 5) and gap <= 0:
        raise HypothesisError(f"case {case_index} needs mu > beta (got mu={mu}, beta={beta})")

    if case_index == 1:
        return AsymptoticLaw(shape=LawShape.CASE_1_1_FINITE, i0=l0)
    if case_index == 2:
        return AsymptoticLaw(shape=LawShape.CASE_1_2_FINITE, a=gap, i0=l0)
    if case_index == 3:
        return AsymptoticLaw(shape=LawShape.CASE_1_1_GROWING, time_scale=l0)
    if case_index == 4:
        return AsymptoticLaw(shape=LawShape.CASE_1_2_GROWING, a=l0 * gap, time_scale=l0)
    if a_n is not None:
        if a_n <= 0:
            raise ValueError("a_n must be positive")
        return AsymptoticLaw(shape=LawShape.GUMBEL, time_scale=l0 / a_n,
                             time_shift=math.log(a_n / mu))
    return AsymptoticLaw(shape=LawShape.GUMBEL, time_scale=1.0 / gap,
                         time_shift=math.log(l0 * (1.0 - beta / mu)))


def law_table(law: AsymptoticLaw, ts: Sequence[float]) -> LawResponse:
    """CDF and density of a law on a grid of raw times."""
    grid = np.asarray(ts, dtype=float)
    cdf = asymptotic_cdf(law, grid)
    pdf = asymptotic_pdf(law, grid)
    points = [LawPoint(t=float(t), cdf=float(c), pdf=float(p)) for t, c, p in zip(grid, cdf, pdf)]
    return LawResponse(law=law, points=points)
