from functools import partial

import pytest
from pydantic import ValidationError
from scipy.stats import kstest

from models.birth_death import bdi_system
from models.enums import TerminalReason
from models.rng_stream import RngStream
from models.simulation import Recording, StopCondition
from models.sirs import sirs_system
from schemas.engine import TauConfig
from schemas.process import BdiParams, SirsParams
from services.oracle_service import bdp_extinction_cdf_exact
from services.ssa_service import simulate_extinction
from services.tau_service import (
    critical_channels, noncritical_tau, simulate_extinction_tau, simulate_trajectory_tau,
)

CFG = TauConfig()


def test_defaults():
    assert CFG.n_c == 200
    assert CFG.epsilon == 0.02


def test_config_rejects_bad_epsilon():
    with pytest.raises(ValidationError):
        TauConfig(epsilon=0.0)


def test_critical_channels_near_exhaustion():
    system = bdi_system(BdiParams(beta=1.0, mu=1.0))
    rates = system.propensities((5,))
    assert critical_channels(system, (5,), rates, 200) == [True, True]
    rates = system.propensities((500,))
    assert critical_channels(system, (500,), rates, 200) == [False, False]


def test_immigration_is_never_critical():
    system = bdi_system(BdiParams(alpha=2.0, mu=1.0))
    assert critical_channels(system, (5,), system.propensities((5,)), 200) == [False, True]


def test_noncritical_tau_for_pure_death():
    system = bdi_system(BdiParams(mu=1.0))
    rates = system.propensities((1000,))
    # bound εx = 20; mean change −1000, variance 1000
    assert noncritical_tau(system, (1000,), rates, [False, False], 0.02) == pytest.approx(0.02)


def test_every_visited_state_is_feasible():
    system = sirs_system(SirsParams(n_pop=2000, lam=0.9, gamma=0.2))
    stop = StopCondition.component_zero()
    for j in range(20):
        path = simulate_trajectory_tau(system, (400, 100), stop, CFG, RngStream.derive(5, j),
                                       Recording.all_events())
        assert all(system.feasible(state) for state in path.states)
        assert path.final_state[0] == 0
        assert path.terminal_reason is TerminalReason.STOPPED


def test_tau_reproducible():
    system = bdi_system(BdiParams(beta=0.5, mu=1.0))
    stop = StopCondition.component_zero()
    first = simulate_extinction_tau(system, (1000,), stop, CFG, RngStream.derive(1, 2))
    second = simulate_extinction_tau(system, (1000,), stop, CFG, RngStream.derive(1, 2))
    assert first == second


def test_small_population_falls_back_to_exact_steps():
    system = bdi_system(BdiParams(mu=1.0))
    sample = simulate_extinction_tau(system, (3,), StopCondition.component_zero(), CFG, RngStream(3))
    assert sample.events == 3


def test_time_horizon_is_not_overshot():
    system = bdi_system(BdiParams(alpha=500.0, mu=1.0))
    sample = simulate_extinction_tau(system, (500,), StopCondition.time_horizon(3.0), CFG, RngStream(6))
    assert sample.time == pytest.approx(3.0)
    assert sample.reason is TerminalReason.STOPPED


def test_pure_death_law_matches_exact_cdf():
    system = bdi_system(BdiParams(mu=1.0))
    stop = StopCondition.component_zero()
    times = [simulate_extinction_tau(system, (1000,), stop, CFG, RngStream.derive(77, j)).time
             for j in range(300)]
    result = kstest(times, partial(bdp_extinction_cdf_exact, 0.0, 1.0, 1000))
    assert result.pvalue > 1e-3


def test_sirs_leap_bound_comes_from_immunity_loss():
    system = sirs_system(SirsParams(n_pop=1_000_000, lam=0.999, gamma=0.1))
    state = (31, 1000)
    rates = system.propensities(state)
    critical = critical_channels(system, state, rates, 200)
    assert critical == [True, True, False]
    # bound 0.02·1000 = 20 against a drift of −100
    assert noncritical_tau(system, state, rates, critical, 0.02) == pytest.approx(0.2)


def test_all_critical_runs_are_exact_steps():
    system = sirs_system(SirsParams(n_pop=1000, lam=0.8, gamma=0.5))
    stop = StopCondition.component_zero()
    for j in range(10):
        leaped = simulate_extinction_tau(system, (10, 20), stop, CFG, RngStream.derive(13, j))
        exact = simulate_extinction(system, (10, 20), stop, RngStream.derive(13, j))
        assert leaped == exact
