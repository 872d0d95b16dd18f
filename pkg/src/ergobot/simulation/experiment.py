"""Two-mode box experiment: trials, aggregation and report files."""

import json
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError

from ergobot.exceptions import SimulationError, TraceError
from ergobot.models.simulation import (
    ExperimentReport,
    ExperimentSpec,
    Mode,
    Scenario,
    TargetStats,
    TrialSummary,
)
from ergobot.models.trace import Phase, Trace
from ergobot.simulation.scenario import run_scenario
from ergobot.skeleton_io.timeseries import FLOAT_FORMAT, write_timeseries
from ergobot.utils.config import RunConfig
from ergobot.utils.fingerprinting import file_fingerprint, generate_fingerprint
from ergobot.utils.logging import get_logger
from ergobot.utils.metrics import MetricsCollector

logger = get_logger(__name__)

DEFAULT_SPEC_RESOURCE = "default_experiment.json"
REPORT_FILE = "report.json"
BARS_FILE = "bars.csv"
TRACE_DIR = "traces"

ModelT = TypeVar("ModelT", bound=BaseModel)


def _validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "document"
    message = str(first["msg"]).removeprefix("Value error, ")
    return f"{location}: {message}"


def _load_model(model: type[ModelT], path: str | Path, what: str) -> ModelT:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise SimulationError(f"Cannot read {what} {path}: {e}", {"path": str(path)}) from e
    except json.JSONDecodeError as e:
        raise SimulationError(
            f"Malformed {what} {path}: {e.msg}", {"path": str(path)}
        ) from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise SimulationError(
            f"Invalid {what} {path}: {_validation_message(e)}",
            {"path": str(path), "errors": e.errors(include_url=False)},
        ) from e


def load_scenario(path: str | Path) -> Scenario:
    """Read a scenario JSON document."""
    return _load_model(Scenario, path, "scenario")


def load_experiment_spec(path: str | Path | None = None) -> ExperimentSpec:
    """Read an experiment spec; the packaged default when ``path`` is None."""
    if path is not None:
        return _load_model(ExperimentSpec, path, "experiment spec")
    text = resources.files("ergobot.data").joinpath(DEFAULT_SPEC_RESOURCE).read_text(
        encoding="utf-8"
    )
    return ExperimentSpec.model_validate_json(text)


def _trials(spec: ExperimentSpec) -> list[tuple[Mode, int]]:
    return [
        (mode, trial)
        for mode in spec.modes
        for trial in range(1, spec.trials_per_mode + 1)
    ]


def _aggregate(
    spec: ExperimentSpec, traces: dict[tuple[Mode, int], Trace]
) -> list[TargetStats]:
    stats = []
    for mode in spec.modes:
        for target in sorted(t.index for t in spec.targets):
            scores = [
                record.breakdown.arm_score
                for (trace_mode, _), trace in traces.items()
                if trace_mode is mode
                for record in trace
                if record.phase is Phase.DWELL and record.target == target
            ]
            if not scores:
                raise SimulationError(
                    f"no dwell samples for target {target}", {"mode": mode.value}
                )
            stats.append(
                TargetStats(
                    target=target,
                    mode=mode,
                    mean=float(np.mean(scores)),
                    max=int(max(scores)),
                    samples=len(scores),
                )
            )
    return stats


def bar_frame(report: ExperimentReport) -> pd.DataFrame:
    """Per-target mean arm score, one column per mode."""
    df = pd.DataFrame(
        [{"target": s.target, "mode": s.mode.value, "mean": s.mean} for s in report.targets]
    )
    bars = df.pivot(index="target", columns="mode", values="mean")
    bars = bars[[mode.value for mode in Mode if mode.value in bars.columns]]
    bars.columns.name = None
    return bars.reset_index()


def write_bars(report: ExperimentReport, destination: str | Path) -> None:
    try:
        bar_frame(report).to_csv(
            destination, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
        )
    except OSError as e:
        raise TraceError(f"Cannot write {destination}: {e}", {"path": str(destination)}) from e


def report_digest(report: ExperimentReport) -> str:
    return generate_fingerprint(report.model_dump(mode="json", exclude={"digest"}))


def write_report(report: ExperimentReport, destination: str | Path) -> None:
    data: dict[str, Any] = report.model_dump(mode="json")
    try:
        Path(destination).write_text(
            json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    except OSError as e:
        raise TraceError(f"Cannot write {destination}: {e}", {"path": str(destination)}) from e


def run_experiment(
    spec: ExperimentSpec,
    out_dir: str | Path,
    config: RunConfig | None = None,
    workers: int = 1,
    metrics: MetricsCollector | None = None,
) -> ExperimentReport:
    """Run every mode and trial of ``spec`` and write traces, bars and report.

    Trials may run on worker threads; results are collected in spec order,
    so the outputs do not depend on ``workers``.
    """
    cfg = config or RunConfig()
    out = Path(out_dir)
    trace_dir = out / TRACE_DIR
    try:
        trace_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise TraceError(f"Cannot create {trace_dir}: {e}", {"path": str(trace_dir)}) from e

    trials = _trials(spec)
    logger.info(
        "Experiment started", name=spec.name, trials=len(trials), workers=workers
    )

    def run(trial: tuple[Mode, int]) -> Trace:
        mode, index = trial
        return run_scenario(spec.scenario(mode, index), cfg, metrics)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        traces = dict(zip(trials, pool.map(run, trials), strict=True))

    summaries = []
    for (mode, index), trace in traces.items():
        relative = f"{TRACE_DIR}/{mode.value}-trial{index}.csv"
        write_timeseries(trace, out / relative)
        dwell = trace.arm_scores(Phase.DWELL)
        summaries.append(
            TrialSummary(
                mode=mode,
                trial=index,
                seed=spec.scenario(mode, index).seed,
                commands=len(trace.commands()),
                mean_arm_score=float(np.mean(dwell)),
                trace_file=relative,
                trace_digest=file_fingerprint(out / relative),
            )
        )

    report = ExperimentReport(
        name=spec.name,
        seed=spec.seed,
        load_kg=spec.load_kg,
        targets=_aggregate(spec, traces),
        trials=summaries,
        spec=spec.model_dump(mode="json"),
        config=cfg.to_dict(),
    )
    report = report.model_copy(update={"digest": report_digest(report)})

    write_bars(report, out / BARS_FILE)
    write_report(report, out / REPORT_FILE)
    logger.info(
        "Experiment finished",
        name=spec.name,
        out_dir=str(out),
        digest=report.digest,
    )
    return report
