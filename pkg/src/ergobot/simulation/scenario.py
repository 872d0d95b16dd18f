"""Closed-loop scenario runner: human model, scorer, planner and robot."""

import time
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from ergobot.core.angles import calibrate, compute_arm_angles
from ergobot.core.planner import Planner
from ergobot.core.rula import score
from ergobot.exceptions import CalibrationError, GeometryError, SimulationError
from ergobot.models.angles import CalibrationProfile
from ergobot.models.planning import Cause, ResponseCommand
from ergobot.models.simulation import Mode, Scenario, WorkpiecePose
from ergobot.models.trace import Phase, Trace, TraceRecord
from ergobot.simulation.human import HumanModel
from ergobot.simulation.workpiece import (
    WorkpieceLimits,
    step_workpiece,
    target_local,
    target_world,
)
from ergobot.skeleton_io.synthesis import calibration_frames
from ergobot.utils.config import RunConfig
from ergobot.utils.logging import get_logger
from ergobot.utils.metrics import MetricsCollector

logger = get_logger(__name__)


@dataclass
class _Loop:
    """Mutable state of one run; never shared between runs."""

    scenario: Scenario
    config: RunConfig
    profile: CalibrationProfile
    human: HumanModel
    planner: Planner
    limits: WorkpieceLimits
    pose: WorkpiecePose
    metrics: MetricsCollector | None = None
    trace: Trace = field(default_factory=Trace)
    motion: ResponseCommand | None = None
    step_index: int = 0

    @property
    def rate(self) -> float:
        return self.config.simulation.rate_hz

    @property
    def now(self) -> float:
        return self.step_index / self.rate

    @property
    def assisted(self) -> bool:
        return self.scenario.mode is Mode.ROBOT_ASSISTED

    def observe(self) -> tuple[TraceRecord, bool]:
        """Score the current posture; returns the record and whether all is idle."""
        t = self.now
        frame = self.human.frame(t)
        angles = compute_arm_angles(frame, self.profile)
        breakdown = score(angles, self.config.scoring)
        deviations = self.planner.classify(angles, breakdown)
        record = TraceRecord(
            t=t,
            angles=angles,
            breakdown=breakdown,
            cause=deviations[0].cause if deviations else None,
            workpiece=self.pose,
        )
        idle = (
            self.motion is None
            and not self.planner.settling
            and not self.planner.actionable(deviations)
        )
        return record, idle

    def advance(self, record: TraceRecord, target: int, local: np.ndarray, phase: Phase) -> None:
        """Arbitrate, log the record, then move the workpiece and the user."""
        command = None
        if self.assisted:
            command = self.planner.step(
                record.t,
                record.angles,
                record.breakdown,
                motion_complete=self.motion is None,
            )
            if command is not None:
                self.motion = command

        self.trace.append(
            record.model_copy(
                update={
                    "cause": command.cause.cause if command else record.cause,
                    "command": command,
                    "target": target,
                    "phase": phase,
                }
            )
        )
        if self.metrics is not None:
            self.metrics.record_score(record.breakdown.arm_score, source="simulation")

        active: Cause | None = None
        if self.motion is not None:
            active = self.motion.cause.cause
            pivot = (
                self.human.hand_world() if active is Cause.WRIST_TRANSVERSAL else None
            )
            result = step_workpiece(
                self.pose, self.motion, 1.0 / self.rate, self.limits, pivot
            )
            self.pose = result.pose
            self.motion = result.remaining
            if result.saturated:
                # a clamped correction cannot be repeated from where it stopped
                self.planner.block(active)
                if self.metrics is not None:
                    self.metrics.record_clamp()
        self.human.follow(target_world(self.pose, local), active)
        self.step_index += 1


def calibrate_user(scenario: Scenario, config: RunConfig) -> CalibrationProfile:
    """Calibration profile from one window of synthetic calibration-pose frames."""
    frames = calibration_frames(
        scenario.anthropometrics,
        scenario.handedness,
        duration_s=config.calibration.min_window_s,
        rate_hz=config.simulation.rate_hz,
    )
    return calibrate(
        frames,
        tool_length=scenario.anthropometrics.tool_length,
        handedness=scenario.handedness,
        min_window_s=config.calibration.min_window_s,
        max_spread_deg=config.calibration.max_spread_deg,
    )


def run_scenario(
    scenario: Scenario,
    config: RunConfig | None = None,
    metrics: MetricsCollector | None = None,
) -> Trace:
    """Simulate a scenario at a fixed step and return its trace.

    Each target gets a reach phase, in which the robot (if assisting) keeps
    correcting until the workpiece rests and no cause is actionable, and a
    dwell phase of ``scenario.dwell_s``, or the configured dwell. A
    correction clamped by the workspace box is not repeated for that target.
    The run is a pure function of the
    scenario and the configuration.
    """
    cfg = config or RunConfig()
    started = time.perf_counter()
    try:
        profile = calibrate_user(scenario, cfg)
    except (CalibrationError, GeometryError) as e:
        raise SimulationError(
            f"Scenario {scenario.name} cannot calibrate: {e}", {"scenario": scenario.name}
        ) from e

    loop = _Loop(
        scenario=scenario,
        config=cfg,
        profile=profile,
        human=HumanModel(scenario.anthropometrics, scenario.handedness),
        planner=Planner(
            profile, cfg.planner, cfg.scoring, scenario.handedness, metrics
        ),
        limits=WorkpieceLimits.from_config(cfg.simulation),
        pose=scenario.initial_workpiece,
        metrics=metrics,
    )
    rng = np.random.default_rng(scenario.seed)
    reach_steps = int(round(cfg.simulation.max_reach_phase_s * loop.rate))
    dwell_s = scenario.dwell_s if scenario.dwell_s is not None else cfg.simulation.dwell_s
    dwell_steps = max(1, int(round(dwell_s * loop.rate)))

    logger.info(
        "Scenario started",
        scenario=scenario.name,
        mode=scenario.mode.value,
        targets=len(scenario.targets),
        seed=scenario.seed,
    )
    try:
        for position, target in enumerate(scenario.targets):
            if scenario.reset_between_targets and position > 0:
                loop.pose = scenario.initial_workpiece
            loop.motion = None
            loop.planner.clear()

            if position == 0 and scenario.initial_posture is not None:
                tip = loop.human.assume(scenario.initial_posture)
                local = target_local(loop.pose, tip)
            else:
                local = np.asarray(target.local, dtype=float)
                if scenario.target_jitter_m > 0:
                    local = local + rng.normal(0.0, scenario.target_jitter_m, 3)
                loop.human.reach(target_world(loop.pose, local))

            if loop.assisted:
                for _ in range(reach_steps):
                    record, idle = loop.observe()
                    if idle:
                        break
                    loop.advance(record, target.index, local, Phase.REACH)
                else:
                    logger.warning(
                        "Reach phase timed out",
                        scenario=scenario.name,
                        target=target.index,
                    )

            for _ in range(dwell_steps):
                record, _ = loop.observe()
                loop.advance(record, target.index, local, Phase.DWELL)
    except GeometryError as e:
        raise SimulationError(
            f"Scenario {scenario.name} failed at t={loop.now:.3f}: {e}",
            {"scenario": scenario.name, "t": loop.now},
        ) from e

    duration = time.perf_counter() - started
    if metrics is not None:
        metrics.record_scenario(scenario.mode.value, duration)
    logger.info(
        "Scenario finished",
        scenario=scenario.name,
        records=len(loop.trace),
        commands=loop.planner.commands_emitted,
    )
    return loop.trace


@dataclass(frozen=True)
class DwellStats:
    """Dwell-phase arm score statistics of one target."""

    mean: float
    max: int
    samples: int


def summarize_trace(trace: Trace) -> dict[int, DwellStats]:
    """Per-target dwell statistics, keyed by target index."""
    scores: dict[int, list[int]] = defaultdict(list)
    for record in trace:
        if record.phase is Phase.DWELL and record.target is not None:
            scores[record.target].append(record.breakdown.arm_score)
    return {
        target: DwellStats(
            mean=float(np.mean(values)), max=int(max(values)), samples=len(values)
        )
        for target, values in sorted(scores.items())
    }
