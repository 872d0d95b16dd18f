"""Synthetic sensor frames from simulated arm postures."""

import numpy as np
from scipy.spatial.transform import Rotation

from ergobot.core.geometry import mirror_quaternion, to_wxyz
from ergobot.core.kinematics import forward_kinematics
from ergobot.exceptions import GeometryError
from ergobot.models.angles import IDENTITY_QUATERNION
from ergobot.models.frames import Handedness, SensorFrame, Vector3
from ergobot.models.simulation import Anthropometrics, ArmConfiguration

# Body proportions of the synthetic skeleton, meters
SHOULDER_HALF_WIDTH = 0.2
TRUNK_LENGTH = 0.5
HEAD_HEIGHT = 0.25
HIP_HALF_WIDTH = 0.1
HIP_DROP = 0.1
LEG_SEGMENT = 0.45


def _vector(p: np.ndarray) -> Vector3:
    return (float(p[0]), float(p[1]), float(p[2]))


def skeleton_joints(
    shoulder: np.ndarray,
    elbow: np.ndarray,
    hand: np.ndarray,
    upper_arm_length: float,
    forearm_length: float,
    handedness: Handedness = Handedness.RIGHT,
) -> dict[str, Vector3]:
    """All 15 joints around an active arm given in right-arm body axes.

    The passive arm hangs straight down. For the left arm the skeleton is
    reflected across the sagittal plane through the active shoulder.
    """
    neck = shoulder + np.array([-SHOULDER_HALF_WIDTH, 0.0, 0.0])
    torso = neck + np.array([0.0, 0.0, -TRUNK_LENGTH])
    other_shoulder = neck + np.array([-SHOULDER_HALF_WIDTH, 0.0, 0.0])
    other_elbow = other_shoulder + np.array([0.0, 0.0, -upper_arm_length])
    hip = torso + np.array([HIP_HALF_WIDTH, 0.0, -HIP_DROP])
    other_hip = torso + np.array([-HIP_HALF_WIDTH, 0.0, -HIP_DROP])
    leg = np.array([0.0, 0.0, -LEG_SEGMENT])

    active = {
        "shoulder": shoulder,
        "elbow": elbow,
        "hand": hand,
        "hip": hip,
        "knee": hip + leg,
        "foot": hip + 2 * leg,
    }
    passive = {
        "shoulder": other_shoulder,
        "elbow": other_elbow,
        "hand": other_elbow + np.array([0.0, 0.0, -forearm_length]),
        "hip": other_hip,
        "knee": other_hip + leg,
        "foot": other_hip + 2 * leg,
    }
    joints = {
        "head": neck + np.array([0.0, 0.0, HEAD_HEIGHT]),
        "neck": neck,
        "torso": torso,
    }
    side, other = handedness.value, "left" if handedness is Handedness.RIGHT else "right"
    for name, position in active.items():
        joints[f"{side}_{name}"] = position
    for name, position in passive.items():
        joints[f"{other}_{name}"] = position

    if handedness is Handedness.LEFT:
        mirror_x = 2 * shoulder[0]
        joints = {
            name: np.array([mirror_x - p[0], p[1], p[2]]) for name, p in joints.items()
        }
    return {name: _vector(p) for name, p in joints.items()}


def hand_orientation(
    gamma_t: float,
    gamma_b: float,
    gamma_w: float = 0.0,
    handedness: Handedness = Handedness.RIGHT,
) -> tuple[float, float, float, float]:
    """Back-of-hand quaternion for a forearm sensor at identity."""
    rotation = Rotation.from_euler("ZXY", [gamma_t, gamma_b, gamma_w], degrees=True)
    q = to_wxyz(rotation)
    return mirror_quaternion(q) if handedness is Handedness.LEFT else q


def frame_from_points(
    t: float,
    shoulder: np.ndarray,
    elbow: np.ndarray,
    hand: np.ndarray,
    wrist: tuple[float, float, float],
    anthropometrics: Anthropometrics,
    handedness: Handedness = Handedness.RIGHT,
) -> SensorFrame:
    """Frame for an arm given by joint positions and (gamma_t, gamma_b, gamma_w)."""
    gamma_t, gamma_b, gamma_w = wrist
    return SensorFrame(
        t=t,
        joints=skeleton_joints(
            shoulder,
            elbow,
            hand,
            anthropometrics.upper_arm_length,
            anthropometrics.forearm_length,
            handedness,
        ),
        imu_hand=hand_orientation(gamma_t, gamma_b, gamma_w, handedness),
        imu_forearm=IDENTITY_QUATERNION,
    )


def synth_frame(
    config: ArmConfiguration,
    anthropometrics: Anthropometrics,
    handedness: Handedness = Handedness.RIGHT,
    t: float = 0.0,
    shoulder: Vector3 | None = None,
) -> SensorFrame:
    """Noise-free frame reproducing ``config`` under an identity calibration."""
    a, b, tool = (
        anthropometrics.upper_arm_length,
        anthropometrics.forearm_length,
        anthropometrics.tool_length,
    )
    if min(a, b, tool) <= 0:
        raise GeometryError("non-positive limb length", {"a": a, "b": b, "L": tool})
    origin = np.asarray(
        shoulder if shoulder is not None else anthropometrics.shoulder, dtype=float
    )
    points = forward_kinematics(config, a, b, tool, origin)
    return frame_from_points(
        t,
        points.shoulder,
        points.elbow,
        points.hand,
        (config.gamma_t, config.gamma_b, config.gamma_w),
        anthropometrics,
        handedness,
    )


def calibration_frames(
    anthropometrics: Anthropometrics,
    handedness: Handedness = Handedness.RIGHT,
    duration_s: float = 1.0,
    rate_hz: float = 30.0,
    start: float = 0.0,
) -> list[SensorFrame]:
    """Frames of a user holding the calibration posture."""
    count = max(1, int(round(duration_s * rate_hz)) + 1)
    neutral = ArmConfiguration.neutral()
    return [
        synth_frame(neutral, anthropometrics, handedness, t=start + i / rate_hz)
        for i in range(count)
    ]
