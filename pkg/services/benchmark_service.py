import logging
import statistics
import time
from typing import Optional

import numpy as np
from scipy.stats import ks_2samp

from models.enums import EngineKind
from models.rng_stream import RngStream
from schemas.experiment import BenchmarkReport, EngineTiming, ExperimentConfig
from services.experiment_service import build_model, simulate_one, stop_condition
from utils.errors import InsufficientSamplesError

logger = logging.getLogger(__name__)


def bench(cfg: ExperimentConfig, n: Optional[int] = None, replications: int = 50) -> BenchmarkReport:
    """
    Time SSA against modified tau-leaping on the same model and compare their
    extinction-time samples with a two-sample KS test. Each engine draws from
    its own substreams so the two samples are independent.
    """
    n = n or cfg.populations[-1]
    k = cfg.populations.index(n) if n in cfg.populations else len(cfg.populations)
    system, state0 = build_model(cfg, n)
    stop = stop_condition(cfg)

    timings = []
    samples: dict[EngineKind, np.ndarray] = {}
    for e, engine in enumerate((EngineKind.SSA, EngineKind.TAU)):
        run_cfg = cfg.model_copy(update={"engine": engine})
        walls, times, events = [], [], []
        for j in range(replications):
            rng = RngStream.derive(cfg.seed, k, j, e)
            started = time.perf_counter()
            sample = simulate_one(run_cfg, system, state0, stop, rng)
            walls.append(time.perf_counter() - started)
            if not sample.censored:
                times.append(sample.time)
            events.append(sample.events)
        horizon = sum(times)
        timings.append(EngineTiming(
            engine=engine,
            replications=replications,
            median_wall_seconds=statistics.median(walls),
            events_per_unit_time=sum(events) / horizon if horizon > 0 else float("nan"),
            mean_extinction_time=statistics.fmean(times) if times else float("nan"),
        ))
        samples[engine] = np.array(times)
        logger.info("bench N=%d %s: median %.6g s per replication", n, engine.value,
                    timings[-1].median_wall_seconds)

    if min(len(s) for s in samples.values()) == 0:
        raise InsufficientSamplesError("an engine produced no uncensored samples")
    result = ks_2samp(samples[EngineKind.SSA], samples[EngineKind.TAU])
    return BenchmarkReport(n=n, timings=timings,
                           ks_between_engines=float(result.statistic),
                           ks_pvalue=float(result.pvalue))
