"""Main CLI entry point for Ergobot Core."""

import json
from collections.abc import Callable
from functools import wraps
from pathlib import Path
from typing import Any, TypeVar, cast

import click
import numpy as np
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ergobot.core.angles import calibrate as calibrate_profile
from ergobot.core.pipeline import score_stream
from ergobot.core.planner import Planner
from ergobot.core.rula import risk_band
from ergobot.exceptions import CalibrationError, ErgobotError, SimulationError, TraceError
from ergobot.models.angles import CalibrationProfile
from ergobot.models.frames import Handedness
from ergobot.models.simulation import Anthropometrics, ArmConfiguration, Mode
from ergobot.models.trace import Trace
from ergobot.simulation.experiment import (
    BARS_FILE,
    load_experiment_spec,
    load_scenario,
    run_experiment,
)
from ergobot.simulation.plotting import plot_experiment
from ergobot.simulation.scenario import run_scenario, summarize_trace
from ergobot.skeleton_io.frame_stream import read_frames, write_frames
from ergobot.skeleton_io.synthesis import synth_frame
from ergobot.skeleton_io.timeseries import write_timeseries
from ergobot.utils.config import ConfigManager, RunConfig
from ergobot.utils.fingerprinting import file_fingerprint
from ergobot.utils.logging import get_logger, setup_logging
from ergobot.utils.metrics import MetricsCollector

logger = get_logger(__name__)
console = Console()

F = TypeVar("F", bound=Callable[..., Any])

BAND_STYLES = {"green": "bold green", "yellow": "bold yellow", "red": "bold red"}

HANDEDNESS = click.Choice([h.value for h in Handedness])


def handles_errors(func: F) -> F:
    """Print domain errors and exit with status 1."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except ErgobotError as e:
            console.print(f"[bold red]Error:[/bold red] {escape(e.message)}")
            if ctx.obj.get("verbose"):
                console.print_exception()
            ctx.exit(1)

    return cast(F, wrapper)


def _config(ctx: click.Context) -> RunConfig:
    return cast(RunConfig, ctx.obj["config"])


def _metrics(ctx: click.Context) -> MetricsCollector:
    return cast(MetricsCollector, ctx.obj["metrics"])


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.option("--config", "-c", help="Path to configuration file")
@click.option("--metrics-out", type=click.Path(dir_okay=False), help="Write Prometheus metrics here on exit")
@click.pass_context
def cli(
    ctx: click.Context, verbose: bool, config: str | None, metrics_out: str | None
) -> None:
    """Ergobot - score arm postures and plan robot workpiece corrections."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose

    try:
        run_config = ConfigManager(config).get_config()
    except ErgobotError as e:
        console.print(f"[bold red]Error:[/bold red] {escape(e.message)}")
        ctx.exit(1)

    level = "DEBUG" if verbose else run_config.logging.level
    setup_logging(level, run_config.logging.file, run_config.logging.format)
    ctx.obj["config"] = run_config
    ctx.obj["metrics"] = MetricsCollector(namespace=run_config.metrics.namespace)

    if verbose:
        console.print("Verbose logging enabled", style="dim")

    if metrics_out and run_config.metrics.enabled:

        def dump_metrics() -> None:
            Path(metrics_out).write_text(ctx.obj["metrics"].get_metrics())

        ctx.call_on_close(dump_metrics)


def _load_profile(path: str) -> CalibrationProfile:
    try:
        return CalibrationProfile.load(path)
    except OSError as e:
        raise CalibrationError(f"Cannot read calibration {path}: {e}", {"path": path}) from e
    except ValidationError as e:
        raise CalibrationError(f"Invalid calibration {path}: {e}", {"path": path}) from e


def _summary_table(title: str, rows: dict[int, Any]) -> Table:
    table = Table(title=title)
    table.add_column("Target", style="cyan")
    table.add_column("Mean", style="green")
    table.add_column("Max", style="magenta")
    table.add_column("Samples", style="dim")
    for target, stats in rows.items():
        table.add_row(str(target), f"{stats.mean:.2f}", str(stats.max), str(stats.samples))
    return table


@cli.command()
@click.option("--frames", "-f", required=True, type=click.Path(dir_okay=False), help="JSON Lines frame file")
@click.option("--calib", required=True, type=click.Path(dir_okay=False), help="Calibration profile JSON")
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Output trace CSV")
@click.option("--live", is_flag=True, help="Print a colour-coded score line per frame")
@click.option("--plan", is_flag=True, help="Arbitrate response commands into the tx/ty/tz/rot_z columns")
@click.pass_context
@handles_errors
def score(
    ctx: click.Context, frames: str, calib: str, out: str, live: bool, plan: bool
) -> None:
    """Score a recorded frame stream."""
    config = _config(ctx)
    profile = _load_profile(calib)
    stream = read_frames(frames, profile.handedness)
    planner = (
        Planner(profile, config.planner, config.scoring, profile.handedness, _metrics(ctx))
        if plan
        else None
    )

    trace = Trace()
    for record in score_stream(stream, profile, config, _metrics(ctx), planner):
        trace.append(record)
        if live:
            arm_score = record.breakdown.arm_score
            style = BAND_STYLES[risk_band(arm_score)]
            console.print(f"t={record.t:8.3f}  [{style}]RULA {arm_score}[/{style}]")
    if len(trace) == 0:
        raise TraceError(f"Frames file {frames} holds no frames", {"path": frames})

    write_timeseries(trace, out)
    scores = trace.arm_scores()
    console.print(f"[bold green]Scored {len(trace)} frames[/bold green] -> {out}")
    console.print(f"Mean arm score: {float(np.mean(scores)):.2f}")
    console.print(f"Max arm score: {max(scores)}")
    if planner is not None:
        console.print(f"Commands emitted: {planner.commands_emitted}")


@cli.command()
@click.option("--frames", "-f", required=True, type=click.Path(dir_okay=False), help="Frames of the calibration posture")
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Output calibration JSON")
@click.option("--tool-length", type=float, help="Tool length in meters")
@click.option("--handedness", type=HANDEDNESS, default="right", show_default=True)
@click.pass_context
@handles_errors
def calibrate(
    ctx: click.Context,
    frames: str,
    out: str,
    tool_length: float | None,
    handedness: str,
) -> None:
    """Build a calibration profile from a calibration-pose recording."""
    config = _config(ctx)
    side = Handedness(handedness)
    window = read_frames(frames, side)
    profile = calibrate_profile(
        window,
        tool_length=tool_length or config.planner.tool_length_m,
        handedness=side,
        min_window_s=config.calibration.min_window_s,
        max_spread_deg=config.calibration.max_spread_deg,
    )
    try:
        profile.save(out)
    except OSError as e:
        raise TraceError(f"Cannot write calibration {out}: {e}", {"path": out}) from e

    console.print(f"[bold green]Calibration written[/bold green] -> {out}")
    console.print(f"[dim]a={profile.a:.4f} m  b={profile.b:.4f} m  L={profile.L:.4f} m[/dim]")


@cli.command()
@click.option("--postures", "-p", required=True, type=click.Path(dir_okay=False), help="JSON list of arm configurations")
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Output JSON Lines frame file")
@click.option("--rate", type=float, default=30.0, show_default=True, help="Frame rate in Hz")
@click.option("--repeat", type=int, default=1, show_default=True, help="Frames per posture")
@click.option("--handedness", type=HANDEDNESS, default="right", show_default=True)
@click.pass_context
@handles_errors
def synth(
    ctx: click.Context,
    postures: str,
    out: str,
    rate: float,
    repeat: int,
    handedness: str,
) -> None:
    """Write a synthetic frame stream for a posture list."""
    try:
        data = json.loads(Path(postures).read_text(encoding="utf-8"))
        configs = [ArmConfiguration.model_validate(item) for item in data]
    except OSError as e:
        raise TraceError(f"Cannot read postures {postures}: {e}", {"path": postures}) from e
    except (json.JSONDecodeError, TypeError, ValidationError) as e:
        raise TraceError(f"Invalid postures {postures}: {e}", {"path": postures}) from e

    simulation = _config(ctx).simulation
    anthropometrics = Anthropometrics(
        upper_arm_length=simulation.upper_arm_m,
        forearm_length=simulation.forearm_m,
        tool_length=_config(ctx).planner.tool_length_m,
        shoulder_height=simulation.shoulder_height_m,
    )
    side = Handedness(handedness)
    frames = (
        synth_frame(config, anthropometrics, side, t=index / rate)
        for index, config in enumerate(c for c in configs for _ in range(max(1, repeat)))
    )
    count = write_frames(frames, out)
    console.print(f"[bold green]Wrote {count} frames[/bold green] -> {out}")


@cli.command()
@click.option("--scenario", "-s", required=True, type=click.Path(dir_okay=False), help="Scenario JSON")
@click.option("--mode", "-m", type=click.Choice([m.value for m in Mode]), help="Override the scenario mode")
@click.option("--seed", type=int, help="Override the scenario seed")
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Output trace CSV")
@click.option("--summary", type=click.Path(dir_okay=False), help="Summary JSON (default: next to the trace)")
@click.pass_context
@handles_errors
def simulate(
    ctx: click.Context,
    scenario: str,
    mode: str | None,
    seed: int | None,
    out: str,
    summary: str | None,
) -> None:
    """Run one closed-loop scenario."""
    loaded = load_scenario(scenario)
    updates: dict[str, Any] = {}
    if mode is not None:
        updates["mode"] = Mode(mode)
    if seed is not None:
        updates["seed"] = seed
    if updates:
        loaded = loaded.model_copy(update=updates)

    trace = run_scenario(loaded, _config(ctx), _metrics(ctx))
    write_timeseries(trace, out)

    stats = summarize_trace(trace)
    summary_path = Path(summary) if summary else Path(out).with_suffix(".json")
    document = {
        "scenario": loaded.name,
        "mode": loaded.mode.value,
        "seed": loaded.seed,
        "records": len(trace),
        "commands": len(trace.commands()),
        "final_arm_score": trace[-1].breakdown.arm_score,
        "targets": {
            str(target): {"mean": s.mean, "max": s.max, "samples": s.samples}
            for target, s in stats.items()
        },
        "trace_digest": file_fingerprint(out),
    }
    try:
        summary_path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")
    except OSError as e:
        raise TraceError(
            f"Cannot write summary {summary_path}: {e}", {"path": str(summary_path)}
        ) from e

    console.print(_summary_table(f"{loaded.name} ({loaded.mode.value})", stats))
    console.print(f"Commands emitted: {document['commands']}")
    console.print(f"[dim]Trace: {out}  Summary: {summary_path}[/dim]")


@cli.command()
@click.option("--spec", type=click.Path(dir_okay=False), help="Experiment spec JSON (default: packaged box experiment)")
@click.option("--out", "-o", required=True, type=click.Path(file_okay=False), help="Output directory")
@click.option("--workers", "-w", type=click.IntRange(min=1), default=1, show_default=True, help="Trials run in parallel")
@click.option("--dwell", type=click.FloatRange(min=0, min_open=True), help="Override the dwell time per target (s)")
@click.option("--seed", type=int, help="Override the experiment seed")
@click.option("--svg", type=click.Path(dir_okay=False), help="Also render the bar chart as SVG")
@click.pass_context
@handles_errors
def experiment(
    ctx: click.Context,
    spec: str | None,
    out: str,
    workers: int,
    dwell: float | None,
    seed: int | None,
    svg: str | None,
) -> None:
    """Run the human-only vs robot-assisted box experiment."""
    loaded = load_experiment_spec(spec)
    updates: dict[str, Any] = {}
    if dwell is not None:
        updates["dwell_s"] = dwell
    if seed is not None:
        updates["seed"] = seed
    if updates:
        loaded = loaded.model_copy(update=updates)

    report = run_experiment(loaded, out, _config(ctx), workers, _metrics(ctx))

    table = Table(title=f"{report.name}: mean RULA arm score per target")
    table.add_column("Target", style="cyan")
    for mode in loaded.modes:
        table.add_column(mode.value, style="green")
    by_mode = {mode: report.stats_for(mode) for mode in loaded.modes}
    for target in sorted(t.index for t in loaded.targets):
        table.add_row(
            str(target),
            *(f"{by_mode[mode][target].mean:.2f} (max {by_mode[mode][target].max})" for mode in loaded.modes),
        )
    console.print(table)

    if svg:
        plot_experiment(Path(out) / BARS_FILE, svg)
    console.print(f"[dim]Report digest: {report.digest}[/dim]")


@cli.command()
@click.option("--bars", "-b", required=True, type=click.Path(dir_okay=False), help="Bar-data CSV from experiment")
@click.option("--svg", required=True, type=click.Path(dir_okay=False), help="Output SVG")
@click.pass_context
@handles_errors
def plot(ctx: click.Context, bars: str, svg: str) -> None:
    """Render experiment bar data as an SVG chart."""
    if not Path(bars).exists():
        raise SimulationError(f"Bar data not found: {bars}", {"path": bars})
    plot_experiment(bars, svg)
    console.print(f"[bold green]Plot written[/bold green] -> {svg}")


if __name__ == "__main__":
    cli()
