"""Kinematic human model: initial reach and compliant following."""

import numpy as np

from ergobot.core.geometry import EPSILON, norm, normalize
from ergobot.core.kinematics import (
    ArmPoints,
    circle_point_highest,
    circle_point_lowest,
    circle_point_nearest,
    configuration_from_points,
    forward_kinematics,
    wrist_inverse,
)
from ergobot.exceptions import GeometryError, SimulationError
from ergobot.models.frames import Handedness, SensorFrame
from ergobot.models.planning import Cause
from ergobot.models.simulation import Anthropometrics, ArmConfiguration
from ergobot.skeleton_io.synthesis import frame_from_points
from ergobot.utils.logging import LoggerMixin, get_logger

logger = get_logger(__name__)

# Joint-cost weights for choosing between reach solutions
UPPER_WEIGHT = 1.0
LOWER_WEIGHT = 1.0
WRIST_WEIGHT = 3.0

ARM_CAUSES = frozenset(
    {
        Cause.UPPER_ARM_SAGITTAL,
        Cause.UPPER_ARM_CORONAL,
        Cause.LOWER_ARM_SAGITTAL,
        Cause.LOWER_ARM_TRANSVERSAL,
    }
)


def joint_cost(config: ArmConfiguration) -> float:
    """Weighted squared deviation from the ergonomic optimum."""
    upper = config.alpha_s**2 + config.alpha_c**2
    lower = (config.beta_s - 90.0) ** 2 + config.beta_t**2
    wrist = config.gamma_b**2 + config.gamma_t**2
    return UPPER_WEIGHT * upper + LOWER_WEIGHT * lower + WRIST_WEIGHT * wrist


def _straight_arm(
    shoulder: np.ndarray, elbow: np.ndarray, tip: np.ndarray, b: float, tool_length: float
) -> ArmPoints:
    direction = normalize(tip - elbow, "forearm")
    hand = elbow + b * direction
    return ArmPoints(shoulder, elbow, hand, hand + tool_length * direction, direction)


def reach_points(
    target: np.ndarray,
    shoulder: np.ndarray,
    a: float,
    b: float,
    tool_length: float,
) -> tuple[ArmPoints, bool]:
    """Wrist-neutral reach to ``target`` and whether it had to be clamped.

    The tool extends the forearm, so the arm is a two-link chain. Of its
    solutions in the vertical plane through shoulder and target the one
    with the lower joint cost wins, the lower elbow on ties.
    """
    if norm(target - shoulder) < EPSILON:
        raise GeometryError("target coincides with the shoulder")

    candidates: list[tuple[float, ArmPoints, bool]] = []
    for solve in (circle_point_lowest, circle_point_highest):
        elbow, clamped = solve(shoulder, target, a, b + tool_length)
        points = _straight_arm(shoulder, elbow, target, b, tool_length)
        try:
            config = configuration_from_points(points)
        except GeometryError:
            continue
        candidates.append((joint_cost(config), points, clamped))
    if not candidates:
        raise GeometryError(
            "no reach within joint limits", {"target": target.tolist()}
        )
    cost, points, clamped = min(candidates, key=lambda c: c[0])
    if clamped:
        # the straight solve aims at the target; put the tip on the reach sphere
        direction = normalize(target - shoulder, "reach direction")
        elbow = shoulder + a * direction
        points = _straight_arm(shoulder, elbow, elbow + direction, b, tool_length)
    return points, clamped


def solve_arm(
    target_world: np.ndarray,
    shoulder_world: np.ndarray,
    a: float,
    b: float,
    tool_length: float,
) -> ArmConfiguration:
    """Configuration whose tool tip reaches ``target_world``.

    Positions are in right-arm body axes. Unreachable targets give the
    fully stretched arm pointing at them, flagged as saturated.
    """
    if min(a, b, tool_length) <= 0:
        raise GeometryError(
            "limb lengths must be positive", {"a": a, "b": b, "L": tool_length}
        )
    target = np.asarray(target_world, dtype=float)
    shoulder = np.asarray(shoulder_world, dtype=float)
    points, clamped = reach_points(target, shoulder, a, b, tool_length)
    if clamped:
        logger.warning("Reach saturated", target=target.tolist())
    return configuration_from_points(points, saturated=clamped)


class HumanModel(LoggerMixin):
    """A user holding a tool on a target, following the workpiece.

    Positions are kept in right-arm body axes; for a left-handed user world
    points are mirrored across the sagittal plane through the shoulder.
    While the robot moves the workpiece for a cause, the user relaxes the
    flagged segment and keeps the rest of the posture: arm causes keep the
    tool's direction and re-solve shoulder and elbow for the hand, a wrist
    bend keeps the upper arm and re-solves forearm and tool, and a wrist
    deviation keeps the hand and re-aims the tool.
    """

    def __init__(
        self,
        anthropometrics: Anthropometrics,
        handedness: Handedness = Handedness.RIGHT,
    ):
        self.anthropometrics = anthropometrics
        self.handedness = handedness
        self.shoulder = np.asarray(anthropometrics.shoulder, dtype=float)
        self.points: ArmPoints | None = None
        self.saturated = False

    def to_body(self, world: np.ndarray) -> np.ndarray:
        p = np.asarray(world, dtype=float)
        if self.handedness is Handedness.RIGHT:
            return p
        return np.array([2 * self.shoulder[0] - p[0], p[1], p[2]])

    to_world = to_body

    @property
    def arm(self) -> ArmPoints:
        if self.points is None:
            raise SimulationError("human has not reached a target yet")
        return self.points

    def assume(self, config: ArmConfiguration) -> np.ndarray:
        """Take a posture; returns the world position of its tool tip."""
        a, b, tool = self._lengths()
        self.points = forward_kinematics(config, a, b, tool, self.shoulder)
        self.saturated = False
        return self.to_world(self.points.tip)

    def reach(self, target_world: np.ndarray) -> None:
        """Fresh wrist-neutral reach to a new target."""
        a, b, tool = self._lengths()
        self.points, self.saturated = reach_points(
            self.to_body(target_world), self.shoulder, a, b, tool
        )
        if self.saturated:
            self.logger.warning(
                "Reach saturated", target=np.asarray(target_world).tolist()
            )

    def follow(self, target_world: np.ndarray, cause: Cause | None) -> None:
        """Track a target that moved while the robot corrects ``cause``."""
        target = self.to_body(target_world)
        arm = self.arm
        if cause is None:
            if norm(arm.tip - target) > 1e-9:
                self.reach(target_world)
            return

        a, b, tool = self._lengths()
        if cause in ARM_CAUSES:
            direction = arm.tool_direction
            hand_goal = target - tool * direction
            elbow, clamped = circle_point_lowest(self.shoulder, hand_goal, a, b)
            hand = elbow + b * normalize(hand_goal - elbow, "forearm")
            self.points = ArmPoints(
                self.shoulder, elbow, hand, hand + tool * direction, direction
            )
        elif cause is Cause.WRIST_SAGITTAL:
            hand, clamped = circle_point_nearest(arm.elbow, target, b, tool, arm.hand)
            direction = normalize(target - hand, "tool")
            self.points = ArmPoints(
                self.shoulder, arm.elbow, hand, hand + tool * direction, direction
            )
        else:
            direction = normalize(target - arm.hand, "tool")
            clamped = False
            self.points = ArmPoints(
                self.shoulder, arm.elbow, arm.hand, arm.hand + tool * direction, direction
            )
        self.saturated = clamped

    def frame(self, t: float) -> SensorFrame:
        """Synthetic sensor frame of the current posture."""
        arm = self.arm
        gamma_b, gamma_t = wrist_inverse(arm.forearm_direction, arm.tool_direction)
        return frame_from_points(
            t,
            arm.shoulder,
            arm.elbow,
            arm.hand,
            (gamma_t, gamma_b, 0.0),
            self.anthropometrics,
            self.handedness,
        )

    def tip_world(self) -> np.ndarray:
        return self.to_world(self.arm.tip)

    def hand_world(self) -> np.ndarray:
        return self.to_world(self.arm.hand)

    def _lengths(self) -> tuple[float, float, float]:
        anthro = self.anthropometrics
        return anthro.upper_arm_length, anthro.forearm_length, anthro.tool_length
