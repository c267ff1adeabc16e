"""
Replicated extinction-time experiments.

Replication j at population index k always draws from the stream derived from
(seed, k, j), so a SampleSet does not depend on the worker count or on the
order in which replications finish.
"""
import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Optional

from pydantic import ValidationError
from tqdm import tqdm

from models.birth_death import bdi_system
from models.enums import EngineKind
from models.reaction_system import ReactionSystem, State
from models.rng_stream import RngStream
from models.simulation import ExtinctionSample, Recording, StopCondition, Trajectory
from models.sirs import sirs_system
from schemas.experiment import ExperimentConfig, SampleSet
from schemas.process import BdiParams, SirsParams, SirsState
from services.ssa_service import simulate_extinction, simulate_trajectory
from services.tau_service import simulate_extinction_tau, simulate_trajectory_tau
from utils.errors import ConfigError, SimulationError

logger = logging.getLogger(__name__)

FINGERPRINT_EXCLUDE = {"seed", "workers", "output", "paths", "path_dt"}


def config_fingerprint(cfg: ExperimentConfig) -> str:
    """sha256 of everything that changes the simulated law; seed and output settings excluded."""
    payload = cfg.model_dump_json(exclude=FINGERPRINT_EXCLUDE, by_alias=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def build_model(cfg: ExperimentConfig, n: int) -> tuple[ReactionSystem, State]:
    """Reaction system and initial state at population size (or initial size) n."""
    try:
        if cfg.scaling is not None:
            params, state = cfg.scaling.instantiate(n)
            return sirs_system(params), state.as_vector()
        if cfg.sirs is not None:
            params = SirsParams(n_pop=n, lam=cfg.sirs.lam, gamma=cfg.sirs.gamma)
            state = SirsState(i=cfg.sirs.i0, r=cfg.sirs.recovered(n)).check_within(params)
            return sirs_system(params), state.as_vector()
        params = BdiParams(
            beta=cfg.bdp.beta, mu=cfg.bdp.mu, alpha=cfg.bdp.alpha,
            absorb_at_zero=cfg.bdp.absorb_at_zero,
        )
        return bdi_system(params), (n,)
    except (ValidationError, ValueError) as exc:
        raise ConfigError(f"N={n}: {exc}", field="populations") from exc


def stop_condition(cfg: ExperimentConfig) -> StopCondition:
    return StopCondition.component_zero(cfg.stop.component, cfg.stop.event_cap)


def simulate_one(cfg: ExperimentConfig, system: ReactionSystem, state0: State,
                 stop: StopCondition, rng: RngStream) -> ExtinctionSample:
    if cfg.engine is EngineKind.TAU:
        return simulate_extinction_tau(system, state0, stop, cfg.tau, rng)
    return simulate_extinction(system, state0, stop, rng)


def _run_chunk(cfg: ExperimentConfig, k: int, n: int,
               indices: list[int]) -> list[tuple[int, ExtinctionSample]]:
    # module-level so worker processes can unpickle it; propensities are closures
    # and get rebuilt on the worker side
    system, state0 = build_model(cfg, n)
    stop = stop_condition(cfg)
    out = []
    for j in indices:
        try:
            sample = simulate_one(cfg, system, state0, stop, RngStream.derive(cfg.seed, k, j))
        except Exception as exc:
            raise SimulationError(f"{type(exc).__name__}: {exc}", k, j) from exc
        out.append((j, sample))
    return out


def _chunks(count: int, parts: int) -> list[list[int]]:
    size = max(1, -(-count // parts))
    return [list(range(s, min(s + size, count))) for s in range(0, count, size)]


def _collect(cfg: ExperimentConfig, k: int, n: int,
             progress: bool) -> dict[int, ExtinctionSample]:
    results: dict[int, ExtinctionSample] = {}
    bar = tqdm(total=cfg.replications, desc=f"N={n}", disable=not progress, leave=False)
    try:
        if cfg.workers == 1:
            for j in range(cfg.replications):
                results.update(_run_chunk(cfg, k, n, [j]))
                bar.update(1)
            return results

        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_run_chunk, cfg, k, n, chunk)
                for chunk in _chunks(cfg.replications, cfg.workers * 4)
            ]
            try:
                for future in as_completed(futures):
                    done = future.result()
                    results.update(done)
                    bar.update(len(done))
            except BaseException:
                for future in futures:
                    future.cancel()
                raise
        return results
    finally:
        bar.close()


def to_sample_set(cfg: ExperimentConfig, n: int, results: dict[int, ExtinctionSample],
                  fingerprint: Optional[str] = None) -> SampleSet:
    order = sorted(results, key=lambda j: (results[j].time, j))
    return SampleSet(
        n_pop=n,
        engine=cfg.engine,
        config_fingerprint=fingerprint or config_fingerprint(cfg),
        seed=cfg.seed,
        replication_index=order,
        times=[results[j].time for j in order],
        reasons=[results[j].reason for j in order],
    )


def run_experiment(cfg: ExperimentConfig, progress: bool = False) -> list[SampleSet]:
    """One SampleSet per population size; fails fast on the first broken replication."""
    fingerprint = config_fingerprint(cfg)
    for n in cfg.populations:
        build_model(cfg, n)

    sample_sets = []
    for k, n in enumerate(cfg.populations):
        logger.info("%s: N=%d, %d replications, engine=%s, workers=%d",
                    cfg.name, n, cfg.replications, cfg.engine.value, cfg.workers)
        results = _collect(cfg, k, n, progress)
        samples = to_sample_set(cfg, n, results, fingerprint)
        if samples.censored:
            logger.warning("%s: N=%d has %d of %d replications capped",
                           cfg.name, n, samples.censored, len(samples))
        logger.info("%s: N=%d finished", cfg.name, n)
        sample_sets.append(samples)
    return sample_sets


def sample_paths(cfg: ExperimentConfig, k: int, count: int) -> list[Trajectory]:
    """Grid-recorded paths of the first `count` replications at population index k."""
    n = cfg.populations[k]
    system, state0 = build_model(cfg, n)
    stop = stop_condition(cfg)
    recording = Recording.grid(cfg.path_dt)
    paths = []
    for j in range(min(count, cfg.replications)):
        rng = RngStream.derive(cfg.seed, k, j)
        if cfg.engine is EngineKind.TAU:
            paths.append(simulate_trajectory_tau(system, state0, stop, cfg.tau, rng, recording))
        else:
            paths.append(simulate_trajectory(system, state0, stop, rng, recording))
    return paths
