"""Projected arm angles, wrist angles, flags and calibration."""

import warnings
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from scipy.spatial.transform import Rotation

from ergobot.core.geometry import (
    EPSILON,
    angle_between,
    body_frame,
    norm,
    rotation_in_body,
    to_rotation,
    to_wxyz,
    upper_arm_pair,
    wrap_degrees,
)
from ergobot.exceptions import CalibrationError, GeometryError
from ergobot.models.angles import (
    ANGLE_NAMES,
    AngleOffsets,
    ArmAngles,
    CalibrationProfile,
    DeviationFlags,
)
from ergobot.models.frames import (
    ArmJoints,
    Handedness,
    Quaternion,
    SensorFrame,
    describe_joint,
)
from ergobot.utils.config import CalibrationConfig
from ergobot.utils.logging import get_logger

logger = get_logger(__name__)

WRIST_SATURATION_DEG = 89.0

# Calibration posture targets for (alpha_s, alpha_c, beta_s, beta_t)
CALIBRATION_TARGETS = {"alpha_s": 0.0, "alpha_c": 0.0, "beta_s": 90.0, "beta_t": 0.0}


def lower_arm_sagittal(r_h: np.ndarray, r_e: np.ndarray, r_s: np.ndarray) -> float:
    """Elbow flexion between forearm and upper-arm vectors, [0, 180]."""
    return angle_between(r_h - r_e, r_e - r_s, "lower-arm vectors")


def upper_arm_sagittal(
    r_t: np.ndarray, r_n: np.ndarray, r_e: np.ndarray, r_s: np.ndarray
) -> float:
    """Unsigned angle between the trunk and upper-arm vectors, [0, 180]."""
    return angle_between(r_t - r_n, r_e - r_s, "torso or upper-arm vectors")


def upper_arm_coronal(r_n: np.ndarray, r_e: np.ndarray, r_s: np.ndarray) -> float:
    """Upper-arm abduction, [-90, 90]."""
    return angle_between(r_n - r_s, r_e - r_s, "shoulder or upper-arm vectors") - 90.0


def lower_arm_transversal(
    r_n: np.ndarray, r_s: np.ndarray, r_h: np.ndarray, r_e: np.ndarray
) -> float:
    """Forearm deviation from the forward direction, + toward the active side."""
    return 90.0 - angle_between(r_s - r_n, r_h - r_e, "shoulder axis or forearm")


class WristAngles(NamedTuple):
    gamma_b: float
    gamma_t: float
    gamma_w: float
    saturated: bool


def _relative_wrist_rotation(
    imu_hand: Quaternion, imu_forearm: Quaternion, frame: np.ndarray | None
) -> Rotation:
    relative = to_rotation(imu_hand) * to_rotation(imu_forearm).inv()
    if frame is None:
        return relative
    return rotation_in_body(relative, frame)


def wrist_angles(
    imu_hand: Quaternion,
    imu_forearm: Quaternion,
    calib: CalibrationProfile,
    frame: np.ndarray | None = None,
) -> WristAngles:
    """Wrist bend, deviation and twist relative to the calibrated reference.

    The relative rotation is decomposed intrinsically about the vertical,
    then lateral, then longitudinal axis. ``frame`` holds body axes as
    columns; without it the sensor axes are taken as body axes.
    """
    relative = _relative_wrist_rotation(imu_hand, imu_forearm, frame)
    rotation = to_rotation(calib.r_ref).inv() * relative
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        gamma_t, gamma_b, gamma_w = (float(c) for c in rotation.as_euler("ZXY", degrees=True))
    saturated = abs(gamma_b) >= WRIST_SATURATION_DEG
    if saturated:
        logger.warning("Wrist decomposition saturated", gamma_b=gamma_b)
    return WristAngles(gamma_b, gamma_t, gamma_w, saturated)


def _arm_joints(frame: SensorFrame, handedness: Handedness) -> ArmJoints:
    missing = frame.missing_joints(handedness)
    if missing:
        raise GeometryError(
            f"missing joint: {describe_joint(missing[0])}", {"t": frame.t}
        )
    return frame.arm_joints(handedness)


def _raw_angles(
    frame: SensorFrame, calib: CalibrationProfile, handedness: Handedness
) -> tuple[dict[str, float], bool]:
    """Uncorrected angles of one frame keyed by field name, and wrist saturation."""
    joints = _arm_joints(frame, handedness)
    axes = body_frame(joints.neck, joints.shoulder, joints.torso, handedness)
    lateral, forward = axes[:, 0], axes[:, 1]

    upper = joints.elbow - joints.shoulder
    trunk = joints.torso - joints.neck
    # sagittal-plane projections separate flexion from abduction
    upper_sagittal = upper - np.dot(upper, lateral) * lateral
    trunk_sagittal = trunk - np.dot(trunk, lateral) * lateral
    if norm(upper_sagittal) < EPSILON:
        alpha_s = 0.0
    else:
        alpha_s = upper_arm_sagittal(
            joints.neck + trunk_sagittal,
            joints.neck,
            joints.shoulder + upper_sagittal,
            joints.shoulder,
        )
        if np.dot(joints.elbow - joints.torso, forward) < 0:
            alpha_s = -alpha_s

    alpha_s, alpha_c = upper_arm_pair(
        alpha_s, upper_arm_coronal(joints.neck, joints.elbow, joints.shoulder)
    )

    wrist = wrist_angles(frame.imu_hand, frame.imu_forearm, calib, axes)
    angles = {
        "alpha_s": alpha_s,
        "alpha_c": alpha_c,
        "beta_s": lower_arm_sagittal(joints.hand, joints.elbow, joints.shoulder),
        "beta_t": lower_arm_transversal(
            joints.neck, joints.shoulder, joints.hand, joints.elbow
        ),
        "gamma_b": wrist.gamma_b,
        "gamma_t": wrist.gamma_t,
        "gamma_w": wrist.gamma_w,
    }
    return angles, wrist.saturated


def compute_arm_angles(
    frame: SensorFrame,
    calib: CalibrationProfile,
    handedness: Handedness | None = None,
) -> ArmAngles:
    """Calibrated, signed arm angles of one frame."""
    side = handedness or calib.handedness
    raw, saturated = _raw_angles(frame, calib, side)
    offsets = calib.offsets
    return ArmAngles(
        alpha_s=wrap_degrees(raw["alpha_s"] + offsets.alpha_s),
        alpha_c=wrap_degrees(raw["alpha_c"] + offsets.alpha_c),
        beta_s=float(np.clip(raw["beta_s"] + offsets.beta_s, 0.0, 180.0)),
        beta_t=raw["beta_t"] + offsets.beta_t,
        gamma_b=raw["gamma_b"] + offsets.gamma_b,
        gamma_t=raw["gamma_t"] + offsets.gamma_t,
        gamma_w=raw["gamma_w"],
        wrist_saturated=saturated,
    )


def compute_flags(
    frame: SensorFrame,
    calib: CalibrationProfile,
    handedness: Handedness | None = None,
    config: CalibrationConfig | None = None,
) -> DeviationFlags:
    """Direction flags; each evaluates true at exactly zero offset.

    The elbow counts as abducted once its distance to the hip exceeds the
    calibrated baseline by ``config.abduction_factor``.
    """
    abduction_factor = (config or CalibrationConfig()).abduction_factor
    side = handedness or calib.handedness
    joints = _arm_joints(frame, side)
    axes = body_frame(joints.neck, joints.shoulder, joints.torso, side)
    lateral, forward = axes[:, 0], axes[:, 1]

    abducted = False
    if calib.elbow_hip_baseline is not None:
        elbow_hip = norm(joints.elbow - joints.hip)
        abducted = elbow_hip > abduction_factor * calib.elbow_hip_baseline

    wrist = wrist_angles(frame.imu_hand, frame.imu_forearm, calib, axes)
    return DeviationFlags(
        upper_forward=bool(np.dot(joints.elbow - joints.torso, forward) >= 0),
        upper_abducted_lateral=abducted,
        forearm_lateral=bool(np.dot(joints.hand - joints.elbow, lateral) >= 0),
        wrist_up=wrist.gamma_b + calib.offsets.gamma_b >= 0,
    )


def _anchored_mean(values: np.ndarray) -> float:
    """Mean taken about the first sample, so constant windows stay exact."""
    anchor = values[0]
    return float(anchor + np.mean(values - anchor))


def _mean_quaternion(quaternions: list[Quaternion]) -> Quaternion:
    stacked = np.asarray(quaternions, dtype=float)
    # align signs with the first sample before averaging
    signs = np.where(stacked @ stacked[0] < 0, -1.0, 1.0)
    mean = (stacked * signs[:, None]).mean(axis=0)
    return to_wxyz(to_rotation(mean / np.linalg.norm(mean)))


def calibrate(
    frames: Sequence[SensorFrame],
    tool_length: float = 0.25,
    handedness: Handedness = Handedness.RIGHT,
    min_window_s: float = 1.0,
    max_spread_deg: float = 5.0,
) -> CalibrationProfile:
    """Build a CalibrationProfile from frames of the calibration posture.

    The user holds the upper arm vertical, the elbow at 90 degrees and the
    wrist neutral. Limb lengths are window means; offsets map the mean
    window angles onto the posture targets.
    """
    if not frames:
        raise CalibrationError("calibration window is empty")
    if tool_length <= 0:
        raise CalibrationError(
            "tool length must be positive", {"tool_length": tool_length}
        )

    duration = frames[-1].t - frames[0].t
    if duration < min_window_s:
        logger.warning(
            "Calibration window shorter than recommended",
            duration_s=duration,
            min_window_s=min_window_s,
        )

    joints = [_arm_joints(frame, handedness) for frame in frames]
    axes = [body_frame(j.neck, j.shoulder, j.torso, handedness) for j in joints]
    upper = np.array([norm(j.elbow - j.shoulder) for j in joints])
    forearm = np.array([norm(j.hand - j.elbow) for j in joints])
    elbow_hip = np.array([norm(j.elbow - j.hip) for j in joints])

    relative = [
        to_wxyz(_relative_wrist_rotation(f.imu_hand, f.imu_forearm, frame_axes))
        for f, frame_axes in zip(frames, axes, strict=True)
    ]
    r_ref = _mean_quaternion(relative)

    provisional = CalibrationProfile(
        upper_arm_length=_anchored_mean(upper),
        forearm_length=_anchored_mean(forearm),
        tool_length=tool_length,
        r_ref=r_ref,
        handedness=handedness,
    )
    raw = [_raw_angles(frame, provisional, handedness)[0] for frame in frames]

    offsets: dict[str, float] = {}
    for name in ANGLE_NAMES:
        values = np.array([r[name] for r in raw])
        spread = float(values.max() - values.min())
        if spread > max_spread_deg:
            raise CalibrationError(
                "calibration unstable",
                {"angle": name, "spread_deg": spread, "max_spread_deg": max_spread_deg},
            )
        offsets[name] = CALIBRATION_TARGETS.get(name, 0.0) - _anchored_mean(values)

    profile = provisional.model_copy(
        update={
            "offsets": AngleOffsets(**offsets),
            "elbow_hip_baseline": _anchored_mean(elbow_hip),
            "wrist_elbow_baseline": _anchored_mean(forearm),
            "window_frames": len(frames),
        }
    )
    logger.info(
        "Calibration complete",
        frames=len(frames),
        upper_arm_m=profile.upper_arm_length,
        forearm_m=profile.forearm_length,
        handedness=handedness.value,
    )
    return profile
