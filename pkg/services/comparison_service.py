import logging
from functools import partial
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.stats import kstest

from schemas.experiment import (
    ComparisonReport, ExperimentConfig, Histogram, PerPopulationReport, SampleSet,
)
from schemas.law import AsymptoticLaw
from services.classifier_service import classify_case
from services.law_service import asymptotic_cdf, law_for_case, bdp_limit_law
from services.oracle_service import bdp_extinction_cdf_exact
from settings import Setting
from utils.errors import InsufficientSamplesError

logger = logging.getLogger(__name__)

QUANTILE_LEVELS = (0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99)

Samples = Union[SampleSet, Sequence[float], np.ndarray]
Cdf = Callable[[np.ndarray], np.ndarray]


def _sorted_times(samples: Samples) -> np.ndarray:
    if isinstance(samples, SampleSet):
        return samples.uncensored_times()
    return np.sort(np.asarray(samples, dtype=float))


def empirical_cdf(samples: Samples, t):
    """Right-continuous empirical CDF of the uncensored samples."""
    times = _sorted_times(samples)
    if times.size == 0:
        raise InsufficientSamplesError("empirical CDF needs at least one uncensored sample")
    values = np.searchsorted(times, np.asarray(t, dtype=float), side="right") / times.size
    return float(values) if np.ndim(t) == 0 else values


def ks_against(samples: Samples, cdf: Cdf) -> float:
    times = _sorted_times(samples)
    if times.size < Setting.ks_min_samples:
        raise InsufficientSamplesError(
            f"KS distance needs at least {Setting.ks_min_samples} uncensored samples, got {times.size}"
        )
    return float(kstest(times, cdf).statistic)


def ks_distance(samples: Samples, law: AsymptoticLaw) -> float:
    """Sup distance between the empirical CDF and the limit law, both step sides."""
    return ks_against(samples, partial(asymptotic_cdf, law))


def reference_cdf(cfg: ExperimentConfig, n: int) -> Optional[tuple[str, Cdf]]:
    """The distribution an experiment's samples at size n are compared against, if any."""
    if cfg.scaling is not None:
        label = classify_case(cfg.scaling)
        if not label.is_case:
            return None
        law = law_for_case(label, cfg.scaling, n)
        return f"{label} limit law", partial(asymptotic_cdf, law)
    if cfg.bdp is not None:
        bdp = cfg.bdp
        if bdp.limit_case is not None:
            law = bdp_limit_law(bdp.limit_case, bdp.beta, bdp.mu, n)
            return f"birth-death regime {bdp.limit_case} limit law", partial(asymptotic_cdf, law)
        if bdp.alpha == 0 and bdp.mu > 0:
            return "exact birth-death CDF", partial(bdp_extinction_cdf_exact, bdp.beta, bdp.mu, n)
    return None


def quantiles(times: np.ndarray) -> dict[str, float]:
    values = np.quantile(times, QUANTILE_LEVELS)
    return {f"{q:g}": float(v) for q, v in zip(QUANTILE_LEVELS, values)}


def histograms(times: np.ndarray, bins: Optional[int] = None) -> tuple[Histogram, Histogram]:
    """
    Equal-width bins over the 0.5%–99.5% quantile range. The density variant
    has bar areas summing to at most 1; the CDF variant holds the empirical CDF
    at each right edge.
    """
    bins = bins or Setting.histogram_bins
    lo, hi = np.quantile(times, [0.005, 0.995])
    if hi <= lo:
        hi = lo + max(abs(lo), 1.0) * 1e-9
    counts, edges = np.histogram(times, bins=bins, range=(lo, hi))
    widths = np.diff(edges)
    total = times.size
    density = counts / (total * widths)
    below = np.count_nonzero(times < lo)
    cdf = (below + np.cumsum(counts)) / total
    return (
        Histogram(edges=edges.tolist(), values=density.tolist()),
        Histogram(edges=edges.tolist(), values=np.minimum(cdf, 1.0).tolist()),
    )


def build_report(cfg: ExperimentConfig, sample_sets: list[SampleSet],
                 fingerprint: str) -> ComparisonReport:
    report = ComparisonReport(config_fingerprint=fingerprint, seed=cfg.seed, engine=cfg.engine)
    for samples in sample_sets:
        n = samples.n_pop
        times = samples.uncensored_times()
        entry = PerPopulationReport(n=n, sample_size=int(times.size), censored=samples.censored)
        if samples.censored:
            report.warnings.append(f"N={n}: {samples.censored} censored samples excluded")
        if times.size == 0:
            report.warnings.append(f"N={n}: no uncensored samples")
            report.per_n.append(entry)
            continue

        entry.quantiles = quantiles(times)
        entry.histogram_density, entry.histogram_cdf = histograms(times)
        reference = reference_cdf(cfg, n)
        if reference is not None:
            entry.reference = reference[0]
            try:
                entry.ks = ks_against(times, reference[1])
            except InsufficientSamplesError as exc:
                report.warnings.append(f"N={n}: {exc}")
        logger.info("N=%d: %d samples, ks=%s", n, times.size, entry.ks)
        report.per_n.append(entry)
    return report
