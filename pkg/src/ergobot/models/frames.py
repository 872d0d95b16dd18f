"""Sensor frame models for Ergobot Core."""

import math
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        def __str__(self) -> str:
            return str(self.value)
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

Vector3 = tuple[float, float, float]
Quaternion = tuple[float, float, float, float]

QUATERNION_TOLERANCE = 1e-6

JOINT_NAMES: tuple[str, ...] = (
    "head",
    "neck",
    "torso",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_hand",
    "right_hand",
    "left_hip",
    "right_hip",
    "left_knee",
    "right_knee",
    "left_foot",
    "right_foot",
)


class Handedness(StrEnum):
    """Active (working) arm."""

    RIGHT = "right"
    LEFT = "left"

    @property
    def lateral_sign(self) -> float:
        """+1 when the active side lies toward world +x."""
        return 1.0 if self is Handedness.RIGHT else -1.0


def arm_joint_names(handedness: Handedness) -> tuple[str, ...]:
    """Joints a frame must carry to score the given arm."""
    side = handedness.value
    return (
        "neck",
        "torso",
        f"{side}_shoulder",
        f"{side}_elbow",
        f"{side}_hand",
        f"{side}_hip",
    )


def describe_joint(name: str) -> str:
    """Side-free joint name, with the sided key in parentheses when it differs."""
    generic = name.removeprefix("left_").removeprefix("right_")
    return generic if generic == name else f"{generic} ({name})"


class ArmJoints(NamedTuple):
    """Arm-relevant joint positions as numpy vectors."""

    neck: np.ndarray
    torso: np.ndarray
    shoulder: np.ndarray
    elbow: np.ndarray
    hand: np.ndarray
    hip: np.ndarray


def quaternion_norm(q: Quaternion) -> float:
    return math.sqrt(sum(c * c for c in q))


class SensorFrame(BaseModel):
    """One timestamped skeleton sample plus the two wrist IMU readings."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(..., description="Timestamp in seconds")
    joints: dict[str, Vector3] = Field(
        ..., description="Joint positions in meters, sensor frame"
    )
    imu_hand: Quaternion = Field(
        ..., description="Back-of-hand sensor orientation [w, x, y, z]"
    )
    imu_forearm: Quaternion = Field(
        ..., description="Forearm reference sensor orientation [w, x, y, z]"
    )

    @field_validator("t")
    @classmethod
    def t_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("timestamp must be finite")
        return v

    @field_validator("joints")
    @classmethod
    def joints_finite(cls, v: dict[str, Vector3]) -> dict[str, Vector3]:
        for name, position in v.items():
            if not all(math.isfinite(c) for c in position):
                raise ValueError(f"non-finite joint: {name}")
        return v

    @field_validator("imu_hand", "imu_forearm")
    @classmethod
    def unit_quaternion(cls, v: Quaternion) -> Quaternion:
        if not all(math.isfinite(c) for c in v):
            raise ValueError("non-finite orientation")
        if abs(quaternion_norm(v) - 1.0) > QUATERNION_TOLERANCE:
            raise ValueError("non-unit orientation")
        return v

    def missing_joints(self, handedness: Handedness) -> list[str]:
        """Arm-relevant joints absent from this frame."""
        return [name for name in arm_joint_names(handedness) if name not in self.joints]

    def joint(self, name: str) -> np.ndarray:
        return np.asarray(self.joints[name], dtype=float)

    def arm_joints(self, handedness: Handedness) -> ArmJoints:
        """Arm-relevant joints for the active side.

        Raises KeyError naming the first missing joint.
        """
        names = arm_joint_names(handedness)
        return ArmJoints(*(self.joint(name) for name in names))
