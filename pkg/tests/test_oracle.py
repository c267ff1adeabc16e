import math

import numpy as np
import pytest

from services.oracle_service import (
    bdp_extinction_cdf_exact, first_step_hitting_probability, truncated_generator,
    uniformized_extinction_cdf,
)


def test_pure_death_median():
    assert bdp_extinction_cdf_exact(0.0, 1.0, 1, math.log(2.0)) == pytest.approx(0.5)


def test_critical_chain():
    assert bdp_extinction_cdf_exact(1.0, 1.0, 1, 1.0) == pytest.approx(0.5)


def test_supercritical_chain_survives_with_positive_probability():
    assert bdp_extinction_cdf_exact(2.0, 1.0, 1, 50.0) == pytest.approx(0.5, rel=1e-12)
    assert bdp_extinction_cdf_exact(2.0, 1.0, 3, 50.0) == pytest.approx(0.125, rel=1e-12)


def test_exact_cdf_vectorized():
    values = bdp_extinction_cdf_exact(0.5, 1.0, 5, np.array([0.0, 1.0, 10.0]))
    assert values[0] == 0.0
    assert np.all(np.diff(values) > 0)


def test_exact_cdf_argument_checks():
    with pytest.raises(ValueError):
        bdp_extinction_cdf_exact(0.5, 0.0, 1, 1.0)
    with pytest.raises(ValueError):
        bdp_extinction_cdf_exact(0.5, 1.0, 1, -1.0)


def test_generator_rows_sum_to_zero():
    q = truncated_generator(0.5, 1.0, 0.3, 20)
    assert np.allclose(np.asarray(q.sum(axis=1)).ravel(), 0.0)
    assert q[0].count_nonzero() == 0


def test_uniformization_matches_closed_form():
    exact = bdp_extinction_cdf_exact(0.5, 1.0, 5, 2.0)
    assert uniformized_extinction_cdf(0.5, 1.0, 5, 2.0) == pytest.approx(exact, abs=1e-8)


def test_uniformization_on_a_grid():
    ts = np.array([0.0, 0.5, 3.0, 8.0])
    assert uniformized_extinction_cdf(1.0, 1.0, 2, ts) == pytest.approx(
        bdp_extinction_cdf_exact(1.0, 1.0, 2, ts), abs=1e-8)


def test_uniformization_start_at_zero():
    assert uniformized_extinction_cdf(0.5, 1.0, 0, 1.0) == 1.0


def test_first_step_solver_boundaries():
    birth, death = (lambda z: 0.5 * z), (lambda z: float(z))
    assert first_step_hitting_probability(birth, death, 0, 4) == 0.0
    assert first_step_hitting_probability(birth, death, 4, 4) == 1.0
    with pytest.raises(ValueError):
        first_step_hitting_probability(birth, death, 5, 4)


def test_first_step_solver_symmetric_walk():
    assert first_step_hitting_probability(lambda z: 1.0, lambda z: 1.0, 3, 10) == pytest.approx(0.3)


@pytest.mark.parametrize("beta", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("l0", [1, 3, 10])
def test_exact_cdf_matches_uniformization_grid(beta, l0):
    ts = np.array([0.5, 1.0, 2.0])
    assert uniformized_extinction_cdf(beta, 1.0, l0, ts) == pytest.approx(
        bdp_extinction_cdf_exact(beta, 1.0, l0, ts), abs=1e-8)


@pytest.mark.parametrize("beta, mu, l0", [(0.0, 1.0, 4), (0.5, 1.0, 1), (0.5, 1.0, 20), (1.0, 1.0, 3)])
def test_exact_cdf_is_a_distribution_function(beta, mu, l0):
    ts = np.linspace(0.0, 200.0, 100)
    values = bdp_extinction_cdf_exact(beta, mu, l0, ts)
    assert values[0] == 0.0
    assert np.all(np.diff(values) >= 0.0)
    assert np.all((values >= 0.0) & (values <= 1.0))
    assert bdp_extinction_cdf_exact(beta, mu, l0, 1e7) == pytest.approx(1.0, abs=1e-5)


def test_supercritical_cdf_is_nondecreasing():
    values = bdp_extinction_cdf_exact(2.0, 1.0, 2, np.linspace(0.0, 30.0, 100))
    assert np.all(np.diff(values) >= 0.0)
    assert values[-1] == pytest.approx(0.25, rel=1e-9)
