"""Data models for Ergobot Core."""

from ergobot.models.angles import (
    ANGLE_NAMES,
    AngleOffsets,
    ArmAngles,
    CalibrationProfile,
    DeviationFlags,
)
from ergobot.models.frames import JOINT_NAMES, Handedness, SensorFrame
from ergobot.models.planning import Cause, Deviation, ResponseCommand
from ergobot.models.scoring import RulaBreakdown
from ergobot.models.simulation import (
    Anthropometrics,
    ArmConfiguration,
    ExperimentReport,
    ExperimentSpec,
    Mode,
    Scenario,
    Target,
    TargetStats,
    TrialSummary,
    WorkpiecePose,
)
from ergobot.models.trace import Phase, Trace, TraceRecord

__all__ = [
    "ANGLE_NAMES",
    "JOINT_NAMES",
    "AngleOffsets",
    "Anthropometrics",
    "ArmAngles",
    "ArmConfiguration",
    "CalibrationProfile",
    "Cause",
    "Deviation",
    "DeviationFlags",
    "ExperimentReport",
    "ExperimentSpec",
    "Handedness",
    "Mode",
    "Phase",
    "RulaBreakdown",
    "Scenario",
    "SensorFrame",
    "Target",
    "TargetStats",
    "Trace",
    "TraceRecord",
    "TrialSummary",
    "WorkpiecePose",
]
