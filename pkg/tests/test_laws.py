import math

import numpy as np
import pytest
from pydantic import ValidationError

from models.enums import CaseKind, LawShape
from repositories.config_repo import load_experiment_config
from schemas.law import AsymptoticLaw, CaseLabel
from schemas.scaling import ScalingSpec
from services.comparison_service import ks_distance
from services.law_service import (
    asymptotic_cdf, asymptotic_pdf, asymptotic_ppf, bdp_limit_law, law_for_case, law_table,
)
from services.oracle_service import bdp_extinction_cdf_exact
from utils.errors import HypothesisError

LAWS = [
    AsymptoticLaw(shape=LawShape.CASE_1_1_FINITE, i0=3),
    AsymptoticLaw(shape=LawShape.CASE_1_1_GROWING, time_scale=10.0),
    AsymptoticLaw(shape=LawShape.CASE_1_2_FINITE, a=0.7, i0=2),
    AsymptoticLaw(shape=LawShape.CASE_1_2_GROWING, a=1.3, time_scale=5.0),
    AsymptoticLaw(shape=LawShape.GUMBEL, time_scale=2.0, time_shift=-1.5),
]
E_INV = math.exp(-1.0)


@pytest.mark.parametrize("law, w, expected", [
    (AsymptoticLaw(shape=LawShape.CASE_1_1_FINITE, i0=1), 1.0, 0.5),
    (AsymptoticLaw(shape=LawShape.CASE_1_2_FINITE, a=1.0, i0=1), math.log(2.0), 0.5),
    (AsymptoticLaw(shape=LawShape.GUMBEL), 0.0, E_INV),
    (AsymptoticLaw(shape=LawShape.CASE_1_1_GROWING), 1.0, E_INV),
])
def test_closed_form_values(law, w, expected):
    assert asymptotic_cdf(law, w) == pytest.approx(expected, rel=1e-12)


def test_limit_variable_normalization():
    law = AsymptoticLaw(shape=LawShape.GUMBEL, time_scale=4.0, time_shift=2.0)
    assert asymptotic_cdf(law, 8.0) == pytest.approx(E_INV)


def test_finite_shapes_vanish_before_zero():
    law = AsymptoticLaw(shape=LawShape.CASE_1_1_FINITE, i0=2)
    assert asymptotic_cdf(law, 0.0) == 0.0
    assert asymptotic_cdf(law, -3.0) == 0.0
    assert asymptotic_pdf(law, -3.0) == 0.0


@pytest.mark.parametrize("law", LAWS)
def test_cdf_is_a_distribution_function(law):
    ts = np.linspace(-20.0, 400.0, 100)
    values = asymptotic_cdf(law, ts)
    assert np.all(np.diff(values) >= 0)
    assert np.all((values >= 0) & (values <= 1))
    assert asymptotic_cdf(law, 1e9) == pytest.approx(1.0, abs=1e-6)
    assert asymptotic_cdf(law, -1e3 * law.time_scale) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("law", LAWS)
def test_pdf_is_the_derivative(law):
    h = 1e-5
    for p in (0.2, 0.5, 0.8):
        t = asymptotic_ppf(law, p)
        slope = (asymptotic_cdf(law, t + h) - asymptotic_cdf(law, t - h)) / (2 * h)
        assert asymptotic_pdf(law, t) == pytest.approx(slope, rel=1e-5)


@pytest.mark.parametrize("law", LAWS)
def test_ppf_inverts_cdf(law):
    ps = np.array([0.01, 0.1, 0.5, 0.9, 0.99])
    assert asymptotic_cdf(law, asymptotic_ppf(law, ps)) == pytest.approx(ps, rel=1e-9)


def test_ppf_rejects_probabilities_outside_unit_interval():
    with pytest.raises(ValueError):
        asymptotic_ppf(LAWS[0], 1.5)


@pytest.mark.parametrize("law", LAWS)
def test_inverse_transform_sample_passes_ks(law):
    u = np.random.default_rng(2718).random(2000)
    samples = asymptotic_ppf(law, u)
    assert ks_distance(samples, law) < 0.05


@pytest.mark.parametrize("w", [0.5, 1.0, 2.0])
def test_small_rate_recovers_the_critical_shape(w):
    near = AsymptoticLaw(shape=LawShape.CASE_1_2_FINITE, a=1e-6, i0=3)
    critical = AsymptoticLaw(shape=LawShape.CASE_1_1_FINITE, i0=3)
    assert abs(asymptotic_cdf(near, w) - asymptotic_cdf(critical, w)) <= 1e-4
    growing = AsymptoticLaw(shape=LawShape.CASE_1_2_GROWING, a=1e-6)
    assert asymptotic_cdf(growing, w) == pytest.approx(math.exp(-1.0 / w), abs=1e-4)


@pytest.mark.parametrize("fields", [
    {"shape": LawShape.CASE_1_1_FINITE},
    {"shape": LawShape.CASE_1_2_FINITE, "i0": 2},
    {"shape": LawShape.CASE_1_2_GROWING},
    {"shape": LawShape.GUMBEL, "time_scale": 0.0},
])
def test_law_parameters_validated(fields):
    with pytest.raises(ValidationError):
        AsymptoticLaw(**fields)


def test_bdp_case_one_and_five():
    assert asymptotic_cdf(bdp_limit_law(1, 1.0, 1.0, 1), 1.0) == pytest.approx(0.5)
    law = bdp_limit_law(5, 0.5, 1.0, 10)
    assert law.shape is LawShape.GUMBEL
    assert law.time_scale == pytest.approx(2.0)
    assert law.time_shift == pytest.approx(math.log(5.0))
    t0 = law.time_scale * law.time_shift
    assert asymptotic_cdf(law, t0) == pytest.approx(E_INV)


def test_bdp_case_five_alternative_normalization():
    law = bdp_limit_law(5, 0.5, 1.0, 10, a_n=5.0)
    assert law.time_scale == pytest.approx(2.0)
    assert law.time_shift == pytest.approx(math.log(5.0))


def test_bdp_case_two_is_the_exact_law():
    law = bdp_limit_law(2, 0.5, 1.0, 1)
    ts = np.linspace(0.0, 30.0, 200)
    gap = np.max(np.abs(asymptotic_cdf(law, ts) - bdp_extinction_cdf_exact(0.5, 1.0, 1, ts)))
    assert gap <= 0.01


def test_bdp_limit_law_errors():
    with pytest.raises(ValueError):
        bdp_limit_law(6, 0.5, 1.0, 1)
    with pytest.raises(HypothesisError):
        bdp_limit_law(2, 1.0, 1.0, 1)
    with pytest.raises(HypothesisError):
        bdp_limit_law(5, 2.0, 1.0, 10)


def test_case_2_1_rate(configs_dir):
    spec = load_experiment_config(configs_dir / "case_2_1.toml").scaling
    law = law_for_case(CaseLabel(kind=CaseKind.C2_1), spec, 10_000)
    assert law.shape is LawShape.CASE_1_2_FINITE
    assert law.a == pytest.approx(0.44)
    assert law.i0 == 30


def test_case_1_1_scale_follows_initial_count(configs_dir):
    spec = load_experiment_config(configs_dir / "case_1_1_subcritical.toml").scaling
    law = law_for_case(CaseLabel(kind=CaseKind.C1_1), spec, 10_000)
    assert law.shape is LawShape.CASE_1_1_GROWING
    assert law.time_scale == 10


def test_case_1_2_constant_initial_count_uses_the_gap_coefficient():
    spec = ScalingSpec.model_validate({
        "lambda_gap": {"c": 0.5, "p": "1/3"},
        "gamma": {"c": 1.0, "q": "1/4"},
        "i0": {"c": 3, "u": 0},
        "r0": {"c": 1, "v": "1/3"},
    })
    law = law_for_case(CaseLabel(kind=CaseKind.C1_2), spec, 10_000)
    assert law.shape is LawShape.CASE_1_2_FINITE
    assert law.a == pytest.approx(0.5)
    assert law.i0 == 3


def test_case_1_3_normalization(configs_dir):
    spec = load_experiment_config(configs_dir / "case_1_3.toml").scaling
    n = 10_000
    law = law_for_case(CaseLabel(kind=CaseKind.C1_3), spec, n)
    gap = n ** -0.25
    assert law.time_scale == pytest.approx(1.0 / gap)
    assert law.time_shift == pytest.approx(math.log(gap * spec.i0.at(n)))


def test_case_2_2_normalization(configs_dir):
    spec = load_experiment_config(configs_dir / "case_2_2.toml").scaling
    law = law_for_case(CaseLabel(kind=CaseKind.C2_2), spec, 100_000)
    assert law.shape is LawShape.GUMBEL
    assert law.time_scale == pytest.approx(1.0 / 0.7)


def test_no_law_for_boundary(configs_dir):
    spec = load_experiment_config(configs_dir / "case_2_2.toml").scaling
    with pytest.raises(ValueError):
        law_for_case(CaseLabel(kind=CaseKind.BOUNDARY), spec, 100)


def test_law_table():
    table = law_table(AsymptoticLaw(shape=LawShape.GUMBEL), [0.0, 1.0])
    assert [p.t for p in table.points] == [0.0, 1.0]
    assert table.points[0].cdf == pytest.approx(E_INV)
    assert table.points[0].pdf == pytest.approx(E_INV)
