"""
Result files of an experiment directory:

- samples.csv: replication_index, n_pop, extinction_time, terminal_reason, engine,
  then the config fingerprint and seed of the run that produced each row
- summary.json: the ComparisonReport, carrying config fingerprint and seed
- paths.csv: optional grid-recorded sample paths
"""
import csv
import json
import logging
from pathlib import Path
from typing import Optional, Sequence

from models.enums import EngineKind, TerminalReason
from models.simulation import Trajectory
from schemas.experiment import ComparisonReport, SampleSet
from utils.errors import ResultsIOError

logger = logging.getLogger(__name__)

SAMPLES_FILE = "samples.csv"
SUMMARY_FILE = "summary.json"
PATHS_FILE = "paths.csv"
SAMPLE_COLUMNS = (
    "replication_index", "n_pop", "extinction_time", "terminal_reason", "engine",
    "config_fingerprint", "seed",
)


def read_summary(out_dir: str | Path) -> Optional[ComparisonReport]:
    path = Path(out_dir) / SUMMARY_FILE
    if not path.exists():
        return None
    try:
        return ComparisonReport.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ResultsIOError(path, str(exc)) from exc


def write_results(sample_sets: Sequence[SampleSet], report: ComparisonReport,
                  out_dir: str | Path) -> list[Path]:
    """Write samples.csv and summary.json; warns when replacing results of a different config."""
    out = Path(out_dir)
    previous = None
    try:
        previous = read_summary(out)
    except ResultsIOError as exc:
        logger.warning("ignoring unreadable previous summary: %s", exc)
    if previous is not None and previous.config_fingerprint != report.config_fingerprint:
        message = (f"fingerprint_mismatch: {out} held results for config "
                   f"{previous.config_fingerprint}, now {report.config_fingerprint}")
        logger.warning(message)
        report = report.model_copy(update={"warnings": [*report.warnings, message]})

    samples_path = out / SAMPLES_FILE
    summary_path = out / SUMMARY_FILE
    try:
        out.mkdir(parents=True, exist_ok=True)
        with samples_path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(SAMPLE_COLUMNS)
            for samples in sample_sets:
                rows = sorted(zip(samples.replication_index, samples.times, samples.reasons))
                for j, t, reason in rows:
                    writer.writerow((j, samples.n_pop, repr(t), reason.value, samples.engine.value,
                                     samples.config_fingerprint, samples.seed))
        summary_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    except OSError as exc:
        raise ResultsIOError(exc.filename or out, exc.strerror or str(exc)) from exc
    logger.info("wrote %s and %s", samples_path, summary_path)
    return [samples_path, summary_path]


def read_samples(out_dir: str | Path) -> list[SampleSet]:
    """Rebuild the SampleSets of an experiment directory from samples.csv alone, in population order."""
    path = Path(out_dir) / SAMPLES_FILE
    grouped: dict[int, list[tuple[float, int, TerminalReason]]] = {}
    origin: dict[int, tuple[EngineKind, str, int]] = {}
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != SAMPLE_COLUMNS:
                raise ResultsIOError(path, f"unexpected columns {reader.fieldnames}")
            for row in reader:
                n = int(row["n_pop"])
                grouped.setdefault(n, []).append((
                    float(row["extinction_time"]),
                    int(row["replication_index"]),
                    TerminalReason(row["terminal_reason"]),
                ))
                run = (EngineKind(row["engine"]), row["config_fingerprint"], int(row["seed"]))
                if origin.setdefault(n, run) != run:
                    raise ResultsIOError(path, f"rows for N={n} come from more than one run")
    except ResultsIOError:
        raise
    except OSError as exc:
        raise ResultsIOError(path, exc.strerror or str(exc)) from exc
    except (KeyError, ValueError) as exc:
        raise ResultsIOError(path, f"malformed row: {exc}") from exc

    sample_sets = []
    for n in sorted(grouped):
        rows = sorted(grouped[n], key=lambda row: (row[0], row[1]))
        engine, fingerprint, seed = origin[n]
        sample_sets.append(SampleSet(
            n_pop=n,
            engine=engine,
            config_fingerprint=fingerprint,
            seed=seed,
            replication_index=[j for _, j, _ in rows],
            times=[t for t, _, _ in rows],
            reasons=[r for _, _, r in rows],
        ))
    return sample_sets


def write_paths(paths_by_n: dict[int, list[Trajectory]], out_dir: str | Path,
                component_names: Sequence[str]) -> Path:
    """One row per recorded point: n_pop, replication_index, time, then each component."""
    path = Path(out_dir) / PATHS_FILE
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(("n_pop", "replication_index", "time", *component_names))
            for n, trajectories in paths_by_n.items():
                for j, trajectory in enumerate(trajectories):
                    for t, state in zip(trajectory.times, trajectory.states):
                        writer.writerow((n, j, repr(t), *state))
    except OSError as exc:
        raise ResultsIOError(path, exc.strerror or str(exc)) from exc
    return path
