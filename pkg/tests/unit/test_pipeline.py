"""Unit tests for replay scoring."""

import pytest

from ergobot.core.pipeline import score_stream
from ergobot.core.planner import Planner
from ergobot.models.planning import Cause
from ergobot.models.simulation import ArmConfiguration
from ergobot.models.trace import Phase
from ergobot.skeleton_io.synthesis import synth_frame


@pytest.fixture
def flexed_frames(anthropometrics):
    """Two seconds of a held shoulder flexion at 30 Hz."""
    posture = ArmConfiguration(alpha_s=50.0)
    return [synth_frame(posture, anthropometrics, t=i / 30) for i in range(61)]


class TestScoreStream:
    """Test cases for score_stream."""

    def test_without_planner(self, flexed_frames, calibrated_profile):
        """Test plain replay names the cause but never commands."""
        records = list(score_stream(flexed_frames, calibrated_profile))

        assert len(records) == 61
        assert all(r.command is None for r in records)
        assert all(r.cause is Cause.UPPER_ARM_SAGITTAL for r in records)
        assert {r.phase for r in records} == {Phase.REPLAY}

    def test_with_planner(self, flexed_frames, calibrated_profile):
        """Test a held deviation is answered once after the hold time."""
        # Arrange
        planner = Planner(calibrated_profile)

        # Act
        records = list(score_stream(flexed_frames, calibrated_profile, planner=planner))

        # Assert
        commanded = [r for r in records if r.command is not None]
        assert len(commanded) == 1
        record = commanded[0]
        assert record.t == pytest.approx(1.0)
        assert record.cause is record.command.cause.cause is Cause.UPPER_ARM_SAGITTAL
        assert record.command.translation[1] < 0
        assert planner.commands_emitted == 1
        assert planner.settling
