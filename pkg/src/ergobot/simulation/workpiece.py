"""Rate-limited workpiece motion inside a workspace box."""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ergobot.core.geometry import rot_z
from ergobot.models.planning import ResponseCommand
from ergobot.models.simulation import WorkpiecePose
from ergobot.utils.config import SimulationConfig
from ergobot.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class WorkpieceLimits:
    """Robot motion limits."""

    v_max: float = 0.1
    omega_max: float = 30.0
    box_min: tuple[float, float, float] = (-0.9, -0.2, 0.2)
    box_max: tuple[float, float, float] = (0.9, 1.4, 2.2)
    position_tolerance: float = 1e-3
    yaw_tolerance: float = 0.1
    clamp: bool = True

    @classmethod
    def from_config(cls, config: SimulationConfig) -> "WorkpieceLimits":
        box_min = tuple(float(v) for v in config.workspace_min)
        box_max = tuple(float(v) for v in config.workspace_max)
        return cls(
            v_max=config.v_max,
            omega_max=config.omega_max,
            box_min=(box_min[0], box_min[1], box_min[2]),
            box_max=(box_max[0], box_max[1], box_max[2]),
            position_tolerance=config.position_tolerance_m,
            yaw_tolerance=config.yaw_tolerance_deg,
        )

    def contains(self, position: np.ndarray) -> bool:
        return bool(
            np.all(position >= np.asarray(self.box_min))
            and np.all(position <= np.asarray(self.box_max))
        )


class WorkpieceStep(NamedTuple):
    """Result of one rate-limited step."""

    pose: WorkpiecePose
    remaining: ResponseCommand | None
    complete: bool
    saturated: bool


def target_world(pose: WorkpiecePose, local: np.ndarray) -> np.ndarray:
    """World position of a workpiece-local point."""
    return np.asarray(pose.position, dtype=float) + rot_z(pose.yaw) @ np.asarray(local)


def target_local(pose: WorkpiecePose, world: np.ndarray) -> np.ndarray:
    """Workpiece-local coordinates of a world point."""
    return rot_z(-pose.yaw) @ (np.asarray(world, dtype=float) - np.asarray(pose.position))


def step_workpiece(
    pose: WorkpiecePose,
    cmd: ResponseCommand | None,
    dt: float,
    limits: WorkpieceLimits,
    pivot: np.ndarray | None = None,
) -> WorkpieceStep:
    """Advance the workpiece toward the remaining part of ``cmd``.

    Translation runs at most ``v_max`` and rotation at most ``omega_max``;
    rotation turns the workpiece about a vertical axis through ``pivot``
    (its own origin by default). A remainder inside one step's reach, or
    inside tolerance, is applied in full, so the final step may exceed the
    rate by less than the tolerance. A pose leaving the workspace box
    is clamped onto it and the motion ends saturated.
    """
    if cmd is None or cmd.is_zero:
        return WorkpieceStep(pose, None, True, False)

    position = np.asarray(pose.position, dtype=float)
    translation = np.asarray(cmd.translation, dtype=float)
    distance = float(np.linalg.norm(translation))
    step_length = limits.v_max * dt
    if distance - step_length < limits.position_tolerance:
        move = translation
    else:
        move = translation * (step_length / distance)

    rotation = cmd.rotation_z
    step_angle = limits.omega_max * dt
    if abs(rotation) - step_angle < limits.yaw_tolerance:
        turn = rotation
    else:
        turn = math.copysign(step_angle, rotation)

    if turn != 0.0:
        center = position if pivot is None else np.asarray(pivot, dtype=float)
        offset = position - center
        rotated = rot_z(turn) @ np.array([offset[0], offset[1], 0.0])
        position = center + np.array([rotated[0], rotated[1], offset[2]])
    position = position + move
    yaw = pose.yaw + turn

    remaining_translation = translation - move
    remaining_rotation = rotation - turn

    saturated = False
    if limits.clamp and not limits.contains(position):
        position = np.clip(position, limits.box_min, limits.box_max)
        saturated = True
        logger.warning(
            "Workpiece clamped to workspace box",
            position=[float(c) for c in position],
            cause=cmd.cause.cause.value,
        )

    new_pose = WorkpiecePose(
        position=(float(position[0]), float(position[1]), float(position[2])),
        yaw=float(yaw),
    )
    residual = float(np.linalg.norm(remaining_translation))
    complete = saturated or (residual == 0.0 and remaining_rotation == 0.0)
    if complete:
        return WorkpieceStep(new_pose, None, True, saturated)

    remaining = cmd.model_copy(
        update={
            "translation": (
                float(remaining_translation[0]),
                float(remaining_translation[1]),
                float(remaining_translation[2]),
            ),
            "rotation_z": float(remaining_rotation),
        }
    )
    return WorkpieceStep(new_pose, remaining, False, False)
