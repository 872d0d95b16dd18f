"""Pytest configuration and shared fixtures."""

import tempfile
from pathlib import Path

import pytest

from ergobot.core.angles import calibrate
from ergobot.models.angles import CalibrationProfile
from ergobot.models.frames import Handedness
from ergobot.models.simulation import (
    Anthropometrics,
    ArmConfiguration,
    Mode,
    Scenario,
    Target,
    WorkpiecePose,
)
from ergobot.skeleton_io.synthesis import calibration_frames
from ergobot.utils.config import RunConfig

# Default box experiment geometry
WORKPIECE_ORIGIN = (0.0, 0.6, 1.15)
LOW_TARGET = (0.0, 0.11, -0.03)
HIGH_TARGET = (0.0, -0.14, 0.0)


@pytest.fixture
def temp_dir():
    """Create a temporary directory."""
    with tempfile.TemporaryDirectory() as tmp:
        yield Path(tmp)


@pytest.fixture
def anthropometrics():
    """Default simulated user."""
    return Anthropometrics()


@pytest.fixture
def neutral_config():
    """The calibration posture."""
    return ArmConfiguration.neutral()


@pytest.fixture
def identity_profile():
    """Calibration with zero offsets for the default user."""
    return CalibrationProfile.identity()


@pytest.fixture
def calibrated_profile(anthropometrics):
    """Calibration built from one second of synthetic calibration frames."""
    return calibrate(calibration_frames(anthropometrics, Handedness.RIGHT))


@pytest.fixture
def run_config():
    """Run configuration with default thresholds."""
    return RunConfig()


@pytest.fixture
def workpiece_pose():
    """Initial workpiece pose of the box experiment."""
    return WorkpiecePose(position=WORKPIECE_ORIGIN, yaw=0.0)


def make_scenario(
    targets: list[tuple[float, float, float]] | None = None,
    mode: Mode = Mode.ROBOT_ASSISTED,
    dwell_s: float | None = 1.0,
    initial_posture: ArmConfiguration | None = None,
    handedness: Handedness = Handedness.RIGHT,
    seed: int = 0,
) -> Scenario:
    """Scenario on the experiment workpiece with short dwell times."""
    points = targets or [LOW_TARGET]
    return Scenario(
        name="test",
        initial_workpiece=WorkpiecePose(position=WORKPIECE_ORIGIN, yaw=0.0),
        targets=[Target(index=i, local=p) for i, p in enumerate(points, start=1)],
        dwell_s=dwell_s,
        mode=mode,
        seed=seed,
        handedness=handedness,
        initial_posture=initial_posture,
        reset_between_targets=True,
    )


@pytest.fixture
def scenario_factory():
    """Factory for short scenarios."""
    return make_scenario
