"""
Ergobot Core - robot-assisted ergonomics engine.

Scores streamed arm postures with RULA, identifies the cause of a raised
score and computes the workpiece motion that returns the user to the
ergonomic optimum.
"""

__version__ = "0.1.0"

from ergobot.exceptions import (
    CalibrationError,
    ConfigError,
    ErgobotError,
    FrameParseError,
    GeometryError,
    PlannerError,
    ScoringError,
    SimulationError,
    TraceError,
)

__all__ = [
    "CalibrationError",
    "ConfigError",
    "ErgobotError",
    "FrameParseError",
    "GeometryError",
    "PlannerError",
    "ScoringError",
    "SimulationError",
    "TraceError",
    "__version__",
]
