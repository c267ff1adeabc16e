import pytest
from pydantic import ValidationError

from models.enums import CaseKind
from repositories.config_repo import load_experiment_config
from schemas.scaling import LambdaGap, RecoveredScaling, ScalingSpec, tolerant_ceil
from services.classifier_service import classify_case, classify_with_checks


def scaling(p, q, u, v=None, fraction=None, sign=1, offset=0.0, i0_c=1.0) -> ScalingSpec:
    r0 = {"fraction": fraction} if fraction is not None else ({"c": 1.0, "v": v} if v is not None else {})
    return ScalingSpec.model_validate({
        "lambda_gap": {"sign": sign, "c": 1.0, "p": p, "offset": offset},
        "gamma": {"c": 1.0, "q": q},
        "i0": {"c": i0_c, "u": u},
        "r0": r0,
    })


@pytest.mark.parametrize("name, expected", [
    ("case_1_1_subcritical", CaseKind.C1_1),
    ("case_1_1_supercritical", CaseKind.C1_1),
    ("case_1_2", CaseKind.C1_2),
    ("case_1_3", CaseKind.C1_3),
    ("case_2_1", CaseKind.C2_1),
    ("case_2_2", CaseKind.C2_2),
])
def test_case_configs(configs_dir, name, expected):
    spec = load_experiment_config(configs_dir / f"{name}.toml").scaling
    assert classify_case(spec).kind is expected


@pytest.mark.parametrize("spec, expected", [
    (scaling("1/2", "1/6", "1/4", v="1/2"), "C1_1"),
    (scaling("1/2", "1/6", "1/4", v="1/2", sign=-1), "C1_1"),
    (scaling("1/4", "1/4", "1/3", v="1/2"), "C1_3"),
    (scaling("1/4", "1/2", "1/5", fraction=0.7), "C2_2"),
    (scaling("1/2", "5/12", 0, fraction=0.3, offset=0.2, i0_c=30), "C2_1"),
    (scaling("1/3", "1/4", "1/3", v="1/3"), "C1_2"),
])
def test_labels(spec, expected):
    assert str(classify_case(spec)) == expected


def test_subcritical_margins():
    result = classify_with_checks(scaling("1/2", "1/6", "1/4", v="1/2"))
    margins = [check.margin for check in result.checks]
    assert margins == pytest.approx([1 / 4, 1 / 4, 1 / 6])
    assert all(check.holds for check in result.checks)


def test_zero_margin_is_a_boundary():
    # I₀ = N^(1/4) against (1 − q)/2 = 1/4
    result = classify_with_checks(scaling("1/4", "1/2", "1/4"))
    assert result.label.kind is CaseKind.BOUNDARY
    assert any(check.margin == 0.0 and not check.holds for check in result.checks)


def test_failed_condition_is_named():
    label = classify_case(scaling("1", "1/6", "1/2"))
    assert label.kind is CaseKind.OUT_OF_SCOPE
    assert str(label) == "out_of_scope(I₀ = o(N^(1/2)γ^(1/2)) fails)"


def test_supercritical_beyond_first_case():
    label = classify_case(scaling("1/4", "1/4", "1/2", sign=-1))
    assert label.kind is CaseKind.OUT_OF_SCOPE
    assert "supercritical" in label.reason


def test_supercritical_with_macroscopic_recovered():
    label = classify_case(scaling("1/4", "1/2", "1/5", fraction=0.7, sign=-1))
    assert label.kind is CaseKind.OUT_OF_SCOPE


def test_constant_gamma_with_macroscopic_recovered_is_a_boundary():
    label = classify_case(scaling("1/4", 0, "1/5", fraction=0.7))
    assert label.kind is CaseKind.BOUNDARY


def test_constant_gap_is_strictly_subcritical():
    spec = ScalingSpec.model_validate({
        "lambda_gap": {"c": 0.5, "p": 0, "offset": 0.0, "sign": 1},
        "gamma": {"c": 1.0, "q": "1/6"},
        "i0": {"c": 1.0, "u": "1/4"},
    })
    assert spec.lambda_gap.decay == 0.0
    assert classify_case(spec).kind is CaseKind.C1_3


def test_fraction_exponents():
    assert LambdaGap(c=1.0, p="1/6").p == pytest.approx(1 / 6)
    assert LambdaGap(c=1.0, p=0.5).p == 0.5


def test_gap_properties():
    gap = LambdaGap(c=2.0, p=0.5)
    assert gap.at(100) == pytest.approx(0.2)
    assert gap.limit == 0.0
    assert gap.direction == 1
    assert gap.coefficient == 2.0
    offset = LambdaGap(c=1.0, p=0.5, offset=0.2)
    assert offset.limit == pytest.approx(0.2)
    assert offset.decay == 0.0
    assert LambdaGap(sign=-1, c=1.0, p=0.5).direction == -1


def test_recovered_scaling_forms():
    with pytest.raises(ValidationError):
        RecoveredScaling(c=1.0, fraction=0.3)
    assert RecoveredScaling().at(1000) == 0
    assert RecoveredScaling(fraction=0.3).at(1000) == 300
    assert RecoveredScaling(c=1.0, v=0.5).at(10_000) == 100


def test_tolerant_ceil():
    assert tolerant_ceil(10.000000000000002) == 10
    assert tolerant_ceil(10.5) == 11


def test_instantiate(configs_dir):
    spec = load_experiment_config(configs_dir / "case_1_1_subcritical.toml").scaling
    params, state = spec.instantiate(10_000)
    assert params.lam == pytest.approx(0.99)
    assert params.gamma == pytest.approx(10_000 ** (-1 / 6))
    assert (state.i, state.r) == (10, 100)


def test_instantiate_rejects_nonpositive_lambda():
    spec = scaling(0, "1/6", 0)
    spec = spec.model_copy(update={"lambda_gap": LambdaGap(c=2.0, p=0)})
    with pytest.raises(ValueError):
        spec.instantiate(100)
