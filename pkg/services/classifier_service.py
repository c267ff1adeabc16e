"""
Which SIRS extinction regime a power-law scaling falls into.

Conditions like I₀|1−λ| → 0 or I₀R₀ = o(N) are decided by exponent arithmetic
on the scalings: with Π(I₀) = u, Π(R₀) = v, Π(γ) = −q and Π(1−λ) = −p, the
first reads u − p < 0 and the second u + v < 1. Logarithmic factors cannot flip
a strict inequality, so they are ignored; an exactly-zero margin is reported
as a boundary instead of being resolved either way.
"""
import logging

from models.enums import CaseKind
from schemas.law import CaseLabel, Classification, ConditionCheck
from schemas.scaling import ScalingSpec

logger = logging.getLogger(__name__)

EPS = 1e-12


def _strict(name: str, margin: float) -> ConditionCheck:
    if abs(margin) <= EPS:
        margin = 0.0
    return ConditionCheck(name=name, margin=margin, holds=margin > 0)


def _decide(candidate: CaseKind, checks: list[ConditionCheck]) -> Classification:
    if all(c.holds for c in checks):
        return Classification(label=CaseLabel(kind=candidate), checks=checks)
    failed = [c for c in checks if c.margin < 0]
    if failed:
        label = CaseLabel(kind=CaseKind.OUT_OF_SCOPE, reason=f"{failed[0].name} fails")
    else:
        label = CaseLabel(kind=CaseKind.BOUNDARY)
    return Classification(label=label, checks=checks)


def _macroscopic(spec: ScalingSpec) -> Classification:
    gap = spec.lambda_gap
    if gap.direction < 0:
        return Classification(label=CaseLabel(
            kind=CaseKind.OUT_OF_SCOPE, reason="supercritical with macroscopic R₀"))
    u, q = spec.i0.u, spec.gamma.q
    checks = [_strict("γ = o(1)", q)]
    if u == 0:
        return _decide(CaseKind.C2_1, checks)
    checks.append(_strict("I₀ = o(N^(1−ε))", 1.0 - u))
    return _decide(CaseKind.C2_2, checks)


def classify_with_checks(spec: ScalingSpec) -> Classification:
    """Case label together with every condition that was checked for it."""
    gap = spec.lambda_gap
    if spec.r0.macroscopic:
        result = _macroscopic(spec)
    else:
        p = gap.decay
        u, q, v = spec.i0.u, spec.gamma.q, spec.r0.v
        # R₀ = 0 satisfies every condition on R₀
        has_r0 = spec.r0.c > 0
        lead = u - p

        if lead < -EPS:
            checks = [_strict("I₀|1−λ| → 0", -lead)]
            if has_r0:
                checks.append(_strict("I₀R₀ = o(N)", 1.0 - u - v))
            checks.append(_strict("I₀ = o(N^(1/2)γ^(1/2))", (1.0 - q) / 2.0 - u))
            result = _decide(CaseKind.C1_1, checks)
        elif gap.direction < 0:
            result = Classification(
                label=CaseLabel(kind=CaseKind.OUT_OF_SCOPE, reason="supercritical beyond Case 1.1"),
                checks=[_strict("I₀|1−λ| → 0", -lead)],
            )
        elif lead <= EPS:
            checks = [ConditionCheck(name="I₀(1−λ) → a > 0", margin=0.0, holds=True)]
            if has_r0:
                checks.append(_strict("I₀R₀ = o(N)", 1.0 - u - v))
            checks.append(_strict("I₀ = o(N^(1/2)γ^(1/2))", (1.0 - q) / 2.0 - u))
            result = _decide(CaseKind.C1_2, checks)
        else:
            checks = [
                _strict("I₀(1−λ) → ∞", lead),
                _strict("I₀ = o(N(1−λ)γ / log I₀(1−λ))", 1.0 - p - q - u),
            ]
            if has_r0:
                checks.append(_strict("R₀ log I₀(1−λ) = o(N(1−λ))", 1.0 - p - v))
            result = _decide(CaseKind.C1_3, checks)

    logger.debug("classified %s as %s", spec, result.label)
    return result


def classify_case(spec: ScalingSpec) -> CaseLabel:
    return classify_with_checks(spec).label
