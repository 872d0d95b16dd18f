"""Unit tests for arm kinematics."""

import numpy as np
import pytest

from ergobot.core.geometry import upper_arm_pair
from ergobot.core.kinematics import (
    ArmPoints,
    circle_point_highest,
    circle_point_lowest,
    circle_point_nearest,
    configuration_from_points,
    forearm_direction,
    forward_kinematics,
    tool_direction,
    wrist_inverse,
)
from ergobot.exceptions import GeometryError
from ergobot.models.simulation import ArmConfiguration

ORIGIN = np.zeros(3)
REACH_END = np.array([0.0, 0.4, 0.0])


class TestForwardKinematics:
    """Test cases for forward_kinematics."""

    def test_neutral_posture(self):
        """Test the calibration posture: upper arm down, forearm and tool forward."""
        # Act
        points = forward_kinematics(ArmConfiguration.neutral(), 0.3, 0.25, 0.25)

        # Assert
        assert points.elbow == pytest.approx([0.0, 0.0, -0.3])
        assert points.hand == pytest.approx([0.0, 0.25, -0.3])
        assert points.tip == pytest.approx([0.0, 0.5, -0.3])
        assert points.forearm_direction == pytest.approx([0.0, 1.0, 0.0])

    def test_shoulder_offset(self):
        """Test joints are placed relative to the given shoulder."""
        shoulder = np.array([0.1, -0.2, 1.45])
        points = forward_kinematics(ArmConfiguration.neutral(), 0.3, 0.25, 0.25, shoulder)
        assert points.tip == pytest.approx(shoulder + np.array([0.0, 0.5, -0.3]))

    def test_limb_lengths_hold(self):
        """Test segment lengths are preserved for a bent posture."""
        config = ArmConfiguration(alpha_s=40.0, alpha_c=15.0, beta_s=70.0, beta_t=10.0)
        points = forward_kinematics(config, 0.3, 0.25, 0.2)
        assert np.linalg.norm(points.elbow - points.shoulder) == pytest.approx(0.3)
        assert np.linalg.norm(points.hand - points.elbow) == pytest.approx(0.25)
        assert np.linalg.norm(points.tip - points.hand) == pytest.approx(0.2)

    @pytest.mark.parametrize("lengths", [(0.0, 0.25, 0.25), (0.3, -0.1, 0.25), (0.3, 0.25, 0.0)])
    def test_non_positive_length_raises(self, lengths):
        """Test limb lengths must be positive."""
        with pytest.raises(GeometryError, match="positive"):
            forward_kinematics(ArmConfiguration.neutral(), *lengths)

    @pytest.mark.parametrize("alpha_s", [0.0, 30.0, -20.0])
    def test_upper_arm_on_shoulder_axis(self, alpha_s):
        """Test an arm held out sideways keeps a forward forearm."""
        # Act
        points = forward_kinematics(ArmConfiguration(alpha_s=alpha_s, alpha_c=90.0), 0.3, 0.25, 0.25)

        # Assert
        assert points.elbow == pytest.approx([0.3, 0.0, 0.0], abs=1e-12)
        assert np.linalg.norm(points.hand - points.elbow) == pytest.approx(0.25)
        assert points.forearm_direction[0] == pytest.approx(0.0, abs=1e-12)

    def test_shoulder_axis_rejects_transversal_deviation(self):
        """Test the transversal angle is fixed once the arm lies on the shoulder axis."""
        with pytest.raises(GeometryError, match="not realizable"):
            forearm_direction(0.0, 90.0, 90.0, 30.0)

    def test_abduction_past_horizontal_is_continuous(self):
        """Test the forearm turns smoothly through ninety degrees of abduction."""
        below = forearm_direction(20.0, 89.9, 80.0, 10.0)
        above = forearm_direction(20.0, 90.1, 80.0, 10.0)
        assert np.linalg.norm(above - below) < 0.01


class TestConfigurationFromPoints:
    """Test cases for recovering angles from joint positions."""

    @pytest.mark.parametrize(
        "config",
        [
            ArmConfiguration(),
            ArmConfiguration(alpha_s=20.0, alpha_c=10.0, beta_s=80.0, beta_t=5.0, gamma_b=10.0, gamma_t=-15.0),
            ArmConfiguration(alpha_s=-30.0, beta_s=100.0, beta_t=-12.0, gamma_b=-20.0, gamma_t=25.0),
            ArmConfiguration(alpha_s=75.0, alpha_c=30.0, beta_s=60.0, beta_t=20.0),
            ArmConfiguration(alpha_s=20.0, alpha_c=105.0, beta_s=70.0, beta_t=10.0),
            ArmConfiguration(alpha_s=-40.0, alpha_c=-100.0, beta_s=120.0, beta_t=30.0, gamma_b=15.0),
            ArmConfiguration(alpha_s=120.0, alpha_c=45.0, beta_s=90.0),
        ],
    )
    def test_round_trip(self, config):
        """Test forward kinematics followed by recovery reproduces the angles."""
        points = forward_kinematics(config, 0.3, 0.25, 0.25)
        recovered = configuration_from_points(points)
        assert recovered.as_tuple() == pytest.approx(config.as_tuple(), abs=1e-9)

    def test_saturation_carried(self):
        """Test the saturation flag is passed through."""
        points = forward_kinematics(ArmConfiguration(), 0.3, 0.25, 0.25)
        assert configuration_from_points(points, saturated=True).saturated is True

    def test_hyperextended_elbow_rejected(self):
        """Test postures beyond the elbow limit raise GeometryError."""
        # Arrange: forearm folded back onto the upper arm
        points = ArmPoints(
            shoulder=ORIGIN,
            elbow=np.array([0.0, 0.0, -0.3]),
            hand=np.array([0.0, 0.01, -0.05]),
            tip=np.array([0.0, 0.26, -0.05]),
            tool_direction=np.array([0.0, 1.0, 0.0]),
        )

        # Act & Assert
        with pytest.raises(GeometryError, match="joint limits"):
            configuration_from_points(points)


class TestWrist:
    """Test cases for the wrist map and its inverse."""

    def test_inverse_recovers_angles(self):
        """Test the bend and turn are recovered from the tool direction."""
        forearm = np.array([0.0, 1.0, 0.0])
        tool = tool_direction(forearm, 10.0, 20.0)
        assert wrist_inverse(forearm, tool) == pytest.approx((10.0, 20.0))

    def test_positive_bend_raises_tool(self):
        """Test a positive bend lifts the tool."""
        tool = tool_direction(np.array([0.0, 1.0, 0.0]), 15.0, 0.0)
        assert tool[2] > 0

    def test_straight_tool_is_zero(self):
        """Test a tool along the forearm reads zero."""
        forearm = np.array([0.0, 0.8, -0.6])
        assert wrist_inverse(forearm, forearm) == pytest.approx((0.0, 0.0), abs=1e-9)


class TestJointCircle:
    """Test cases for the two-link middle-joint placements."""

    def test_lowest_point(self):
        """Test the lowest solution keeps both links and hangs down."""
        # Act
        mid, clamped = circle_point_lowest(ORIGIN, REACH_END, 0.3, 0.25)

        # Assert
        assert clamped is False
        assert np.linalg.norm(mid - ORIGIN) == pytest.approx(0.3)
        assert np.linalg.norm(REACH_END - mid) == pytest.approx(0.25)
        assert mid[2] < 0
        assert mid[0] == pytest.approx(0.0)

    def test_highest_point(self):
        """Test the highest solution lies above the chain."""
        mid, _ = circle_point_highest(ORIGIN, REACH_END, 0.3, 0.25)
        assert mid[2] > 0
        assert np.linalg.norm(mid - ORIGIN) == pytest.approx(0.3)

    def test_nearest_point(self):
        """Test the nearest solution turns toward the reference."""
        mid, _ = circle_point_nearest(ORIGIN, REACH_END, 0.3, 0.25, np.array([1.0, 0.2, 0.0]))
        assert mid[0] > 0
        assert mid[2] == pytest.approx(0.0, abs=1e-12)

    def test_out_of_reach_is_clamped(self):
        """Test a far end straightens the chain and reports the clamp."""
        mid, clamped = circle_point_lowest(ORIGIN, np.array([0.0, 1.0, 0.0]), 0.3, 0.25)
        assert clamped is True
        assert mid == pytest.approx([0.0, 0.3, 0.0], abs=1e-6)

    def test_vertical_chain_bends_backward(self):
        """Test a vertical chain without a lowest point bends backward."""
        mid, _ = circle_point_lowest(ORIGIN, np.array([0.0, 0.0, -0.4]), 0.3, 0.25)
        assert mid[1] < 0

    def test_coincident_ends_raise(self):
        """Test a chain ending at its base is rejected."""
        with pytest.raises(GeometryError, match="coincides"):
            circle_point_lowest(ORIGIN, ORIGIN, 0.3, 0.25)


class TestUpperArmPair:
    """Test cases for upper_arm_pair."""

    @pytest.mark.parametrize(
        "reading,expected",
        [
            ((150.0, 70.0), (-30.0, 110.0)),
            ((-100.0, -80.0), (80.0, -100.0)),
            ((120.0, 40.0), (120.0, 40.0)),
            ((30.0, 80.0), (30.0, 80.0)),
        ],
    )
    def test_pair_choice(self, reading, expected):
        """Test the flexed-past-vertical reading flips only near the shoulder axis."""
        assert upper_arm_pair(*reading) == pytest.approx(expected)

    def test_both_readings_place_the_elbow_alike(self):
        """Test the two readings describe the same upper arm."""
        flexed = forward_kinematics(ArmConfiguration(alpha_s=150.0, alpha_c=70.0), 0.3, 0.25, 0.25)
        abducted = forward_kinematics(ArmConfiguration(alpha_s=-30.0, alpha_c=110.0), 0.3, 0.25, 0.25)
        assert flexed.elbow == pytest.approx(abducted.elbow)
