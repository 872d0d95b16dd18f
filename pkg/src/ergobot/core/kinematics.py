"""Two-link arm with tool: forward kinematics and analytic solves.

Positions are expressed in right-arm body axes (x toward the active side,
y forward, z up). Left-arm callers mirror into these axes first.
"""

import math
from typing import NamedTuple

import numpy as np

from ergobot.core.geometry import (
    EPSILON,
    norm,
    normalize,
    rot_x,
    rot_z,
    upper_arm_pair,
    wrap_degrees,
)
from ergobot.exceptions import GeometryError
from ergobot.models.simulation import ArmConfiguration

LATERAL = np.array([1.0, 0.0, 0.0])
FORWARD = np.array([0.0, 1.0, 0.0])
UP = np.array([0.0, 0.0, 1.0])
DOWN = -UP


class ArmPoints(NamedTuple):
    """Joint positions plus the unit tool direction."""

    shoulder: np.ndarray
    elbow: np.ndarray
    hand: np.ndarray
    tip: np.ndarray
    tool_direction: np.ndarray

    @property
    def forearm_direction(self) -> np.ndarray:
        return normalize(self.hand - self.elbow, "forearm")


def upper_arm_direction(alpha_s: float, alpha_c: float) -> np.ndarray:
    s, c = math.radians(alpha_s), math.radians(alpha_c)
    return np.array([math.sin(c), math.cos(c) * math.sin(s), -math.cos(c) * math.cos(s)])


def forearm_direction(
    alpha_s: float, alpha_c: float, beta_s: float, beta_t: float
) -> np.ndarray:
    """Unit forearm vector with the given flexion and transversal angles.

    The forearm is resolved in the upper arm's own frame: the arm axis, the
    shoulder axis carried along by flexion and abduction, and their normal
    pointing forward. Of the two candidates the forward one is returned. With
    the arm along the shoulder axis the transversal angle is fixed by the
    flexion, and the forearm lies in the forward plane.
    """
    s, c = math.radians(alpha_s), math.radians(alpha_c)
    upper = upper_arm_direction(alpha_s, alpha_c)
    across = np.array([math.cos(c), -math.sin(c) * math.sin(s), math.sin(c) * math.cos(s)])
    ahead = np.array([0.0, math.cos(s), math.sin(s)])

    cos_c = math.cos(c)
    c1 = math.cos(math.radians(beta_s))
    lateral_gap = math.sin(math.radians(beta_t)) - c1 * math.sin(c)
    if abs(cos_c) < EPSILON:
        if abs(lateral_gap) > 1e-9:
            raise GeometryError(
                "forearm angles not realizable for this upper-arm posture",
                {"beta_s": beta_s, "beta_t": beta_t},
            )
        c2 = 0.0
    else:
        c2 = lateral_gap / cos_c
    residual = 1.0 - c1 * c1 - c2 * c2
    if residual < -1e-12:
        raise GeometryError(
            "forearm angles not realizable for this upper-arm posture",
            {"beta_s": beta_s, "beta_t": beta_t},
        )
    c3 = math.sqrt(max(residual, 0.0))
    return c1 * upper + c2 * across + c3 * ahead


def tool_direction(forearm: np.ndarray, gamma_b: float, gamma_t: float) -> np.ndarray:
    """Forearm direction bent about the lateral, then the vertical body axis."""
    return rot_z(gamma_t) @ rot_x(gamma_b) @ forearm


def wrist_inverse(forearm: np.ndarray, tool: np.ndarray) -> tuple[float, float]:
    """(gamma_b, gamma_t) turning ``forearm`` onto ``tool``.

    When the tool direction cannot be reached exactly the bend is clipped.
    """
    vx, vy, vz = (float(c) for c in forearm)
    dx, dy, dz = (float(c) for c in tool)
    rho = math.hypot(vy, vz)
    delta = math.atan2(vz, vy)
    if rho < EPSILON:
        bend = 0.0
    else:
        bend = math.asin(max(-1.0, min(1.0, dz / rho))) - delta
    bent = (vx, rho * math.cos(delta + bend), dz)
    # a vertical direction has no heading
    if math.hypot(dx, dy) < 1e-9 or math.hypot(bent[0], bent[1]) < 1e-9:
        turn = 0.0
    else:
        turn = math.atan2(dy, dx) - math.atan2(bent[1], bent[0])
    return wrap_degrees(math.degrees(bend)), wrap_degrees(math.degrees(turn))


def forward_kinematics(
    config: ArmConfiguration,
    a: float,
    b: float,
    tool_length: float,
    shoulder: np.ndarray | None = None,
) -> ArmPoints:
    """Joint positions of a configuration, wrist twist ignored."""
    if min(a, b, tool_length) <= 0:
        raise GeometryError(
            "limb lengths must be positive", {"a": a, "b": b, "L": tool_length}
        )
    origin = np.zeros(3) if shoulder is None else np.asarray(shoulder, dtype=float)
    upper = upper_arm_direction(config.alpha_s, config.alpha_c)
    forearm = forearm_direction(
        config.alpha_s, config.alpha_c, config.beta_s, config.beta_t
    )
    tool = tool_direction(forearm, config.gamma_b, config.gamma_t)
    elbow = origin + a * upper
    hand = elbow + b * forearm
    return ArmPoints(origin, elbow, hand, hand + tool_length * tool, tool)


def _joint_circle(
    start: np.ndarray, end: np.ndarray, first: float, second: float
) -> tuple[np.ndarray, np.ndarray, float, bool]:
    """Center, axis and radius of a two-link chain's middle-joint circle.

    Unreachable ends are clamped onto the reach sphere; the flag reports it.
    """
    offset = end - start
    distance = norm(offset)
    if distance < EPSILON:
        raise GeometryError("two-link target coincides with its base")
    axis = offset / distance
    clamped = False
    if distance > first + second:
        distance, clamped = first + second, True
    elif distance < abs(first - second):
        distance, clamped = abs(first - second), True

    along = (first * first + distance * distance - second * second) / (2 * distance)
    radius = math.sqrt(max(first * first - along * along, 0.0))
    return start + along * axis, axis, radius, clamped


def _perpendicular(direction: np.ndarray, axis: np.ndarray) -> np.ndarray:
    return direction - np.dot(direction, axis) * axis


def circle_point_lowest(
    start: np.ndarray, end: np.ndarray, first: float, second: float
) -> tuple[np.ndarray, bool]:
    """Middle joint of a two-link chain, at the lowest point of its circle.

    A vertical chain has no lowest point; the joint then goes backward.
    """
    center, axis, radius, clamped = _joint_circle(start, end, first, second)
    down = _perpendicular(DOWN, axis)
    if norm(down) < 1e-9:
        down = _perpendicular(-FORWARD, axis)
    return center + radius * normalize(down, "swivel direction"), clamped


def circle_point_highest(
    start: np.ndarray, end: np.ndarray, first: float, second: float
) -> tuple[np.ndarray, bool]:
    """Middle joint at the highest point of its circle."""
    center, axis, radius, clamped = _joint_circle(start, end, first, second)
    up = _perpendicular(UP, axis)
    if norm(up) < 1e-9:
        up = _perpendicular(FORWARD, axis)
    return center + radius * normalize(up, "swivel direction"), clamped


def circle_point_nearest(
    start: np.ndarray,
    end: np.ndarray,
    first: float,
    second: float,
    reference: np.ndarray,
) -> tuple[np.ndarray, bool]:
    """Middle joint at the point of its circle nearest ``reference``."""
    center, axis, radius, clamped = _joint_circle(start, end, first, second)
    toward = _perpendicular(reference - center, axis)
    if norm(toward) < 1e-9:
        return circle_point_lowest(start, end, first, second)
    return center + radius * normalize(toward), clamped


def configuration_from_points(
    points: ArmPoints, saturated: bool = False
) -> ArmConfiguration:
    """Ground-truth angles of an arm given by its joint positions."""
    upper = normalize(points.elbow - points.shoulder, "upper arm")
    forearm = points.forearm_direction

    sagittal = upper - upper[0] * LATERAL
    if norm(sagittal) < EPSILON:
        alpha_s = 0.0
    else:
        cosine = float(np.dot(normalize(sagittal), DOWN))
        alpha_s = math.degrees(math.acos(max(-1.0, min(1.0, cosine))))
        if upper[1] < 0:
            alpha_s = -alpha_s
    alpha_c = math.degrees(math.asin(max(-1.0, min(1.0, float(upper[0])))))
    alpha_s, alpha_c = upper_arm_pair(alpha_s, alpha_c)
    cosine = float(np.dot(upper, forearm))
    beta_s = math.degrees(math.acos(max(-1.0, min(1.0, cosine))))
    beta_t = math.degrees(math.asin(max(-1.0, min(1.0, float(forearm[0])))))
    gamma_b, gamma_t = wrist_inverse(forearm, points.tool_direction)

    try:
        return ArmConfiguration(
            alpha_s=alpha_s,
            alpha_c=alpha_c,
            beta_s=beta_s,
            beta_t=beta_t,
            gamma_b=gamma_b,
            gamma_t=gamma_t,
            saturated=saturated,
        )
    except ValueError as e:
        raise GeometryError(
            "arm posture outside human joint limits", {"error": str(e)}
        ) from e
