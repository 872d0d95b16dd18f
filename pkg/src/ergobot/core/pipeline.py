"""Replay scoring: frames in, trace records out."""

from collections.abc import Iterable, Iterator

from ergobot.core.angles import compute_arm_angles
from ergobot.core.planner import Planner, classify
from ergobot.core.rula import score
from ergobot.models.angles import CalibrationProfile
from ergobot.models.frames import SensorFrame
from ergobot.models.trace import Phase, TraceRecord
from ergobot.utils.config import RunConfig
from ergobot.utils.logging import get_logger
from ergobot.utils.metrics import MetricsCollector

logger = get_logger(__name__)


def score_stream(
    frames: Iterable[SensorFrame],
    profile: CalibrationProfile,
    config: RunConfig | None = None,
    metrics: MetricsCollector | None = None,
    planner: Planner | None = None,
) -> Iterator[TraceRecord]:
    """Score each frame; the cause column holds the top triggered cause.

    With a planner every frame is also arbitrated. A recording carries no
    motion reports, so settling always waits out ``settle_time_s``; emitted
    commands fill the command columns and name the cause they answer.
    """
    cfg = config or RunConfig()
    for frame in frames:
        angles = compute_arm_angles(frame, profile)
        breakdown = score(angles, cfg.scoring)
        deviations = classify(
            angles, breakdown, cfg.scoring, cfg.planner.trigger_score
        )
        command = None
        if planner is not None:
            command = planner.step(frame.t, angles, breakdown, motion_complete=None)
        if metrics is not None:
            metrics.record_score(breakdown.arm_score, source="replay")
        logger.debug("Frame scored", t=frame.t, arm_score=breakdown.arm_score)

        cause = deviations[0].cause if deviations else None
        yield TraceRecord(
            t=frame.t,
            angles=angles,
            breakdown=breakdown,
            cause=command.cause.cause if command else cause,
            command=command,
            phase=Phase.REPLAY,
        )
