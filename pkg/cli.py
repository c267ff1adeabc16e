"""Command-line front end: simulate, classify, law, hitprob, compare, bench."""
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import click
from pydantic import ValidationError

from models.enums import EngineKind, HitKind, LawShape, ModelKind
from repositories.config_repo import apply_overrides, load_experiment_config
from repositories.sample_repo import write_paths, write_results
from schemas.experiment import ComparisonReport, ExperimentConfig
from schemas.law import AsymptoticLaw
from schemas.scaling import ScalingSpec
from services.benchmark_service import bench as run_bench
from services.classifier_service import classify_with_checks
from services.comparison_service import build_report
from services.experiment_service import config_fingerprint, run_experiment, sample_paths
from services.hitting_service import evaluate_hitting
from services.law_service import law_table, bdp_limit_law
from settings import Setting
from utils.errors import ConfigError, SirsError

logger = logging.getLogger(__name__)

ENGINES = click.Choice([e.value for e in EngineKind])


def fmt(x: Optional[float]) -> str:
    return "-" if x is None else f"{x:.6g}"


def _load(config: str, seed, workers, engine, out, paths=None) -> ExperimentConfig:
    cfg = load_experiment_config(config)
    return apply_overrides(cfg, seed=seed, workers=workers, engine=engine, output=out, paths=paths)


def _run_and_write(cfg: ExperimentConfig) -> ComparisonReport:
    fingerprint = config_fingerprint(cfg)
    sample_sets = run_experiment(cfg, progress=True)
    report = build_report(cfg, sample_sets, fingerprint)
    write_results(sample_sets, report, cfg.output_dir)
    if cfg.paths:
        names = ("infected", "recovered") if cfg.model is ModelKind.SIRS else ("population",)
        recorded = {n: sample_paths(cfg, k, cfg.paths) for k, n in enumerate(cfg.populations)}
        write_paths(recorded, cfg.output_dir, names)
    return report


def _print_report(report: ComparisonReport) -> None:
    click.echo(f"config {report.config_fingerprint[:12]}  seed {report.seed}  engine {report.engine.value}")
    click.echo(f"{'N':>12} {'samples':>8} {'censored':>9} {'median':>12} {'ks':>10}  reference")
    for entry in report.per_n:
        median = entry.quantiles.get("0.5")
        click.echo(f"{entry.n:>12} {entry.sample_size:>8} {entry.censored:>9} "
                   f"{fmt(median):>12} {fmt(entry.ks):>10}  {entry.reference or '-'}")
    for warning in report.warnings:
        click.echo(f"warning: {warning}", err=True)


config_option = click.option("--config", "config", required=True,
                             type=click.Path(dir_okay=False), help="Experiment TOML file")
seed_option = click.option("--seed", type=click.IntRange(min=0), default=None, help="Override the master seed")
workers_option = click.option("--workers", type=click.IntRange(min=1), default=None)
engine_option = click.option("--engine", type=ENGINES, default=None)
out_option = click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory")


@click.group()
@click.option("--verbose", is_flag=True, help="Debug logging")
def cli(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else Setting.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@config_option
@seed_option
@workers_option
@engine_option
@out_option
@click.option("--paths", type=click.IntRange(min=0), default=None,
              help="Also record this many sample paths per N")
def simulate(config, seed, workers, engine, out, paths):
    """Run an experiment and write samples.csv and summary.json."""
    cfg = _load(config, seed, workers, engine, out, paths)
    report = _run_and_write(cfg)
    _print_report(report)
    click.echo(f"results in {Path(cfg.output_dir)}")


@cli.command()
@config_option
@seed_option
@workers_option
@engine_option
@out_option
def compare(config, seed, workers, engine, out):
    """Simulate and report KS distances to the classified limit law."""
    cfg = _load(config, seed, workers, engine, out)
    if cfg.scaling is not None:
        click.echo(f"case {classify_with_checks(cfg.scaling).label}")
    _print_report(_run_and_write(cfg))


@cli.command()
@click.option("--config", "config", type=click.Path(dir_okay=False), default=None,
              help="Take the [scaling] section of an experiment file")
@click.option("--gap-p", default=None, help="1 − λ decays like N^(−p); fractions like 1/2 allowed")
@click.option("--gap-sign", type=click.Choice(["1", "-1"]), default="1")
@click.option("--gap-c", type=float, default=1.0)
@click.option("--gap-offset", type=float, default=0.0)
@click.option("--gamma-c", type=float, default=1.0)
@click.option("--gamma-q", default=None)
@click.option("--i0-c", type=float, default=1.0)
@click.option("--i0-u", default="0")
@click.option("--r0-c", type=float, default=0.0)
@click.option("--r0-v", default="0")
@click.option("--r0-fraction", type=float, default=None)
def classify(config, gap_p, gap_sign, gap_c, gap_offset, gamma_c, gamma_q,
             i0_c, i0_u, r0_c, r0_v, r0_fraction):
    """Print the case label of a power-law scaling and the conditions checked."""
    if config:
        cfg = load_experiment_config(config)
        if cfg.scaling is None:
            raise ConfigError("the config has no [scaling] section", field="scaling")
        spec = cfg.scaling
    else:
        if gap_p is None or gamma_q is None:
            raise ConfigError("--gap-p and --gamma-q are required without --config", field="scaling")
        try:
            spec = ScalingSpec.model_validate({
                "lambda_gap": {"sign": int(gap_sign), "c": gap_c, "p": gap_p, "offset": gap_offset},
                "gamma": {"c": gamma_c, "q": gamma_q},
                "i0": {"c": i0_c, "u": i0_u},
                "r0": {"c": r0_c, "v": r0_v, "fraction": r0_fraction},
            })
        except ValidationError as exc:
            first = exc.errors()[0]
            raise ConfigError(first["msg"], field=".".join(str(p) for p in first["loc"])) from exc
    result = classify_with_checks(spec)
    click.echo(str(result.label))
    for check in result.checks:
        mark = "ok" if check.holds else ("boundary" if check.margin == 0 else "fails")
        click.echo(f"  {check.name:<36} margin {fmt(check.margin):>10}  {mark}")


@cli.command()
@click.option("--shape", type=click.Choice([s.value for s in LawShape]), default=None)
@click.option("--i0", type=int, default=None)
@click.option("--a", "a", type=float, default=None)
@click.option("--scale", type=float, default=1.0, help="time_scale")
@click.option("--shift", type=float, default=0.0, help="time_shift")
@click.option("--bdp-case", type=click.IntRange(1, 5), default=None,
              help="Build the law from birth-death rates instead of --shape")
@click.option("--beta", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--l0", type=int, default=None)
@click.option("--t", "times", type=float, multiple=True,
              help="Raw times (repeatable); the law maps them through --scale and --shift")
def law(shape, i0, a, scale, shift, bdp_case, beta, mu, l0, times):
    """Print a limit law's CDF and density at raw times t, with w = t/scale − shift."""
    try:
        if bdp_case is not None:
            if beta is None or mu is None or l0 is None:
                raise ConfigError("--bdp-case needs --beta, --mu and --l0", field="bdp_case")
            chosen = bdp_limit_law(bdp_case, beta, mu, l0)
        elif shape is not None:
            chosen = AsymptoticLaw(shape=LawShape(shape), i0=i0, a=a, time_scale=scale, time_shift=shift)
        else:
            raise ConfigError("give --shape or --bdp-case", field="shape")
    except ConfigError:
        raise
    except ValidationError as exc:
        raise ConfigError(exc.errors()[0]["msg"], field="law") from exc
    except ValueError as exc:
        raise ConfigError(str(exc), field="law") from exc
    points = times or (0.5, 1.0, 2.0, 4.0)
    table = law_table(chosen, points)
    click.echo(f"{'t':>12} {'cdf':>12} {'pdf':>12}")
    for point in table.points:
        click.echo(f"{fmt(point.t):>12} {fmt(point.cdf):>12} {fmt(point.pdf):>12}")


@cli.command()
@click.option("--kind", type=click.Choice([k.value for k in HitKind]), required=True)
@click.option("--beta", type=float, default=None)
@click.option("--start", "start", type=int, default=None)
@click.option("--barrier", type=int, default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--l", "l", type=int, default=None)
@click.option("--t0", type=float, default=None)
def hitprob(kind, beta, start, barrier, alpha, mu, l, t0):
    """Print a hitting probability (or bound) and its linear-system value."""
    try:
        result = evaluate_hitting(HitKind(kind), beta=beta, start=start, barrier=barrier,
                                  alpha=alpha, mu=mu, l=l, t0=t0)
    except ValueError as exc:
        raise ConfigError(str(exc), field=kind) from exc
    click.echo(fmt(result.value))
    if result.linear_system is not None:
        click.echo(f"linear system {fmt(result.linear_system)}")


@cli.command()
@config_option
@seed_option
@click.option("--n", "n", type=int, default=None, help="Population size (default: the largest)")
@click.option("--reps", type=click.IntRange(min=2), default=50, help="Replications per engine")
def bench(config, seed, n, reps):
    """SSA against tau-leaping: wall clock, events per unit time, cross-engine KS."""
    cfg = _load(config, seed, None, None, None)
    report = run_bench(cfg, n=n, replications=reps)
    click.echo(f"N={report.n}")
    click.echo(f"{'engine':>8} {'median s':>12} {'events/time':>12} {'mean T':>12}")
    for row in report.timings:
        click.echo(f"{row.engine.value:>8} {fmt(row.median_wall_seconds):>12} "
                   f"{fmt(row.events_per_unit_time):>12} {fmt(row.mean_extinction_time):>12}")
    click.echo(f"cross-engine KS {fmt(report.ks_between_engines)} (p={fmt(report.ks_pvalue)})")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI; 1 on a config error, 2 on a runtime failure."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None,
                          prog_name="sirs-x", standalone_mode=False)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 2
    except (SirsError, RuntimeError, ValueError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        click.echo(f"error: {exc}", err=True)
        return 2
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
