from pathlib import Path

import pytest

from repositories.config_repo import parse_experiment_config

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def configs_dir() -> Path:
    return CONFIG_DIR


@pytest.fixture
def bdp_config():
    """Small birth-death experiment; keyword overrides go straight into the mapping."""
    def make(**overrides):
        data = {
            "name": "bdp-test",
            "populations": [1, 3],
            "replications": 40,
            "seed": 12345,
            "workers": 1,
            "bdp": {"beta": 0.5, "mu": 1.0},
        }
        data.update(overrides)
        return parse_experiment_config(data)
    return make


@pytest.fixture
def sirs_config():
    def make(**overrides):
        data = {
            "name": "sirs-test",
            "populations": [200, 400],
            "replications": 30,
            "seed": 777,
            "workers": 1,
            "sirs": {"lambda": 0.7, "gamma": 0.5, "i0": 5, "r0": 3},
        }
        data.update(overrides)
        return parse_experiment_config(data)
    return make
