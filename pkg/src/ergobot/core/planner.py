"""Deviation classification, corrective responses and command arbitration."""

import math
from dataclasses import dataclass, field

from ergobot.exceptions import PlannerError
from ergobot.models.angles import ArmAngles, CalibrationProfile
from ergobot.models.frames import Handedness
from ergobot.models.planning import Cause, Deviation, ResponseCommand
from ergobot.models.scoring import RulaBreakdown
from ergobot.utils.config import PlannerConfig, ScoringConfig
from ergobot.utils.logging import get_logger
from ergobot.utils.metrics import MetricsCollector

logger = get_logger(__name__)

TIME_TOLERANCE = 1e-9


def _triggered(cause: Cause, angles: ArmAngles, cfg: ScoringConfig) -> bool:
    if cause is Cause.UPPER_ARM_CORONAL:
        return abs(angles.alpha_c) > cfg.coronal_trigger
    if cause is Cause.LOWER_ARM_TRANSVERSAL:
        return abs(angles.beta_t) > cfg.transversal_threshold
    if cause is Cause.WRIST_TRANSVERSAL:
        return abs(angles.gamma_t) > cfg.wrist_trigger
    if cause is Cause.WRIST_SAGITTAL:
        return abs(angles.gamma_b) > cfg.wrist_trigger
    if cause is Cause.UPPER_ARM_SAGITTAL:
        return abs(angles.alpha_s) > cfg.upper_trigger
    low, high = cfg.lower_band
    return not low <= angles.beta_s <= high


def classify(
    angles: ArmAngles,
    breakdown: RulaBreakdown,
    scoring: ScoringConfig | None = None,
    trigger_score: int = 2,
) -> list[Deviation]:
    """Triggered causes, highest priority first.

    Coronal and transversal arm deviations come first, then the wrist
    (rotation before bend), then upper-arm and finally lower-arm flexion.
    Nothing is reported while the arm score stays below ``trigger_score``.
    """
    if breakdown.arm_score < trigger_score:
        return []
    cfg = scoring or ScoringConfig()
    return [
        Deviation(cause=cause, magnitude=getattr(angles, cause.angle_name))
        for cause in Cause
        if _triggered(cause, angles, cfg)
    ]


def _clean(value: float) -> float:
    # folds -0.0 into 0.0
    return value + 0.0


def compute_response(
    d: Deviation,
    profile: CalibrationProfile,
    handedness: Handedness | None = None,
    gain: float = 1.0,
    thresholds: ScoringConfig | None = None,
) -> ResponseCommand:
    """Workpiece motion returning the deviated segment to its optimum.

    Translations are body-frame vectors for the right arm; for the left arm
    the lateral component and the rotation change sign. When ``thresholds``
    is given the deviation must actually be triggered.
    """
    if thresholds is not None and not _triggered(
        d.cause, _angles_with(d), thresholds
    ):
        raise PlannerError(
            f"{d.cause} magnitude {d.magnitude} is below its trigger",
            {"cause": d.cause.value, "magnitude": d.magnitude},
        )
    if not 0 < gain <= 1:
        raise PlannerError("gain must lie in (0, 1]", {"gain": gain})

    side = handedness or profile.handedness
    theta = math.radians(d.magnitude)
    a, b, tool = profile.upper_arm_length, profile.forearm_length, profile.tool_length

    rotation_z = 0.0
    if d.cause is Cause.UPPER_ARM_SAGITTAL:
        translation = (0.0, -a * math.sin(theta), -a * (1 - math.cos(theta)))
    elif d.cause is Cause.UPPER_ARM_CORONAL:
        translation = (-a * math.sin(theta), 0.0, -a * (1 - math.cos(theta)))
    elif d.cause is Cause.LOWER_ARM_SAGITTAL:
        translation = (0.0, b * (1 - math.sin(theta)), b * math.cos(theta))
    elif d.cause is Cause.LOWER_ARM_TRANSVERSAL:
        translation = (-b * math.sin(theta), b * (1 - math.cos(theta)), 0.0)
    elif d.cause is Cause.WRIST_SAGITTAL:
        translation = (0.0, tool * (1 - math.cos(theta)), -tool * math.sin(theta))
    else:
        translation = (0.0, 0.0, 0.0)
        rotation_z = -d.magnitude

    mirror = side.lateral_sign
    x, y, z = (gain * c for c in translation)
    return ResponseCommand(
        translation=(_clean(mirror * x), _clean(y), _clean(z)),
        rotation_z=_clean(mirror * gain * rotation_z),
        cause=d,
    )


def _angles_with(d: Deviation) -> ArmAngles:
    """Neutral angles with only the deviation's driving angle changed."""
    values = ArmAngles.neutral().model_dump()
    values[d.cause.angle_name] = d.magnitude
    return ArmAngles.model_validate(values)


@dataclass
class ArbitrationState:
    """Mutable debounce state, owned by one caller."""

    onsets: dict[Cause, float] = field(default_factory=dict)
    last_command_time: float | None = None
    last_time: float | None = None
    settling: bool = False
    blocked: set[Cause] = field(default_factory=set)

    def reset(self) -> None:
        self.onsets.clear()
        self.blocked.clear()
        self.last_command_time = None
        self.last_time = None
        self.settling = False


def arbitrate(
    now: float,
    angles: ArmAngles,
    breakdown: RulaBreakdown,
    state: ArbitrationState,
    profile: CalibrationProfile,
    config: PlannerConfig | None = None,
    scoring: ScoringConfig | None = None,
    handedness: Handedness | None = None,
    motion_complete: bool | None = None,
) -> ResponseCommand | None:
    """Debounced command selection for one frame; updates ``state`` in place.

    A cause must stay triggered for ``hold_time_s`` before its command is
    emitted. After a command nothing is emitted until the workpiece settles:
    ``motion_complete`` reports it when known, otherwise ``settle_time_s``
    must elapse. Onset timers restart once settled. Causes in
    ``state.blocked`` are never acted on.
    """
    cfg = config or PlannerConfig()
    if state.last_time is not None and now < state.last_time:
        raise PlannerError(
            "non-monotone timestamp", {"now": now, "previous": state.last_time}
        )
    state.last_time = now

    if state.settling:
        if motion_complete is None:
            assert state.last_command_time is not None
            settled = now - state.last_command_time >= cfg.settle_time_s - TIME_TOLERANCE
        else:
            settled = motion_complete
        if not settled:
            state.onsets.clear()
            return None
        state.settling = False

    deviations = [
        d
        for d in classify(angles, breakdown, scoring, cfg.trigger_score)
        if d.cause not in state.blocked
    ]
    active = {d.cause for d in deviations}
    for cause in list(state.onsets):
        if cause not in active:
            del state.onsets[cause]
    for d in deviations:
        state.onsets.setdefault(d.cause, now)

    if not deviations:
        return None

    top = deviations[0]
    if now - state.onsets[top.cause] < cfg.hold_time_s - TIME_TOLERANCE:
        return None

    command = compute_response(top, profile, handedness, cfg.gain).model_copy(
        update={"t": now}
    )
    state.onsets.clear()
    state.last_command_time = now
    state.settling = True
    logger.info(
        "Response command emitted",
        t=now,
        cause=top.cause.value,
        magnitude=top.magnitude,
        translation=command.translation,
        rotation_z=command.rotation_z,
    )
    return command


class Planner:
    """Per-stream planner: configuration, profile and arbitration state."""

    def __init__(
        self,
        profile: CalibrationProfile,
        config: PlannerConfig | None = None,
        scoring: ScoringConfig | None = None,
        handedness: Handedness | None = None,
        metrics: MetricsCollector | None = None,
    ):
        self.profile = profile
        self.config = config or PlannerConfig()
        self.scoring = scoring or ScoringConfig()
        self.handedness = handedness or profile.handedness
        self.metrics = metrics
        self.state = ArbitrationState()
        self.commands_emitted = 0

    @property
    def settling(self) -> bool:
        return self.state.settling

    def classify(self, angles: ArmAngles, breakdown: RulaBreakdown) -> list[Deviation]:
        return classify(angles, breakdown, self.scoring, self.config.trigger_score)

    def actionable(self, deviations: list[Deviation]) -> list[Deviation]:
        """Deviations the planner may still respond to."""
        return [d for d in deviations if d.cause not in self.state.blocked]

    def block(self, cause: Cause) -> None:
        """Stop acting on ``cause`` until the next clear, e.g. after a clamped move."""
        if cause not in self.state.blocked:
            logger.warning("Cause blocked", cause=cause.value)
        self.state.blocked.add(cause)

    def step(
        self,
        now: float,
        angles: ArmAngles,
        breakdown: RulaBreakdown,
        motion_complete: bool | None = None,
    ) -> ResponseCommand | None:
        command = arbitrate(
            now,
            angles,
            breakdown,
            self.state,
            self.profile,
            self.config,
            self.scoring,
            self.handedness,
            motion_complete,
        )
        if command is not None:
            self.commands_emitted += 1
            if self.metrics is not None:
                self.metrics.record_command(command.cause.cause.value)
        return command

    def clear(self) -> None:
        """Drop onset timers, blocked causes and any settling wait; time keeps running."""
        self.state.onsets.clear()
        self.state.blocked.clear()
        self.state.settling = False

    def reset(self) -> None:
        self.state.reset()
        self.commands_emitted = 0
