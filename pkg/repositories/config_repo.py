import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from models.enums import EngineKind
from schemas.experiment import ExperimentConfig
from utils.errors import ConfigError

logger = logging.getLogger(__name__)


def _field_name(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "config"


def parse_experiment_config(data: dict[str, Any]) -> ExperimentConfig:
    """Validate a parsed config mapping; failures name the offending field."""
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise ConfigError(first["msg"], field=_field_name(exc)) from exc


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """Read an experiment config from a TOML file."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"no such file {path}", field="config") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}", field="config") from exc
    data.setdefault("name", path.stem)
    cfg = parse_experiment_config(data)
    logger.debug("loaded %s from %s", cfg.name, path)
    return cfg


def apply_overrides(cfg: ExperimentConfig, seed: Optional[int] = None,
                    workers: Optional[int] = None, engine: Optional[str] = None,
                    output: Optional[str] = None, paths: Optional[int] = None) -> ExperimentConfig:
    """Command-line flags take precedence over config values."""
    updates: dict[str, Any] = {}
    if seed is not None:
        updates["seed"] = seed
    if workers is not None:
        updates["workers"] = workers
    if engine is not None:
        updates["engine"] = EngineKind(engine)
    if output is not None:
        updates["output"] = output
    if paths is not None:
        updates["paths"] = paths
    if not updates:
        return cfg
    return parse_experiment_config({**cfg.model_dump(by_alias=True), **updates})
