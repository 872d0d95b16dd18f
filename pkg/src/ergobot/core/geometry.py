"""Vector, body-frame and orientation helpers."""

import math

import numpy as np
from scipy.spatial.transform import Rotation

from ergobot.exceptions import GeometryError
from ergobot.models.frames import Handedness, Quaternion
from ergobot.models.simulation import ALPHA_C_LIMIT

EPSILON = 1e-12

# Reflection across the sagittal plane
MIRROR = np.diag([-1.0, 1.0, 1.0])


def norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(v))


def normalize(v: np.ndarray, what: str = "vector") -> np.ndarray:
    """Unit vector along v; raises GeometryError for zero-length input."""
    length = norm(v)
    if length < EPSILON:
        raise GeometryError(f"degenerate {what}: zero length", {"vector": what})
    return np.asarray(v, dtype=float) / length


def angle_between(u: np.ndarray, v: np.ndarray, what: str = "vectors") -> float:
    """Unsigned angle between two vectors, degrees in [0, 180]."""
    cosine = float(np.dot(normalize(u, what), normalize(v, what)))
    return float(np.degrees(np.arccos(np.clip(cosine, -1.0, 1.0))))


def body_frame(
    neck: np.ndarray,
    shoulder: np.ndarray,
    torso: np.ndarray,
    handedness: Handedness = Handedness.RIGHT,
) -> np.ndarray:
    """Body axes as matrix columns (lateral, forward, up).

    Lateral points from the neck to the active shoulder, up from the torso
    to the neck. For the left arm the frame is the mirror image of the
    right-arm frame, so left-arm poses read like mirrored right-arm poses.
    """
    lateral = normalize(shoulder - neck, "shoulder axis")
    up_raw = neck - torso
    up = normalize(up_raw - np.dot(up_raw, lateral) * lateral, "trunk axis")
    if handedness is Handedness.RIGHT:
        forward = np.cross(up, lateral)
    else:
        forward = np.cross(lateral, up)
    return np.column_stack((lateral, forward, up))


def to_rotation(q: Quaternion | np.ndarray) -> Rotation:
    """scipy Rotation from a [w, x, y, z] quaternion."""
    w, x, y, z = (float(c) for c in q)
    return Rotation.from_quat([x, y, z, w])


def to_wxyz(rotation: Rotation) -> Quaternion:
    """[w, x, y, z] quaternion with non-negative scalar part."""
    x, y, z, w = (float(c) for c in rotation.as_quat())
    if w < 0:
        w, x, y, z = -w, -x, -y, -z
    return (w, x, y, z)


def mirror_quaternion(q: Quaternion) -> Quaternion:
    """Orientation reflected across the sagittal plane."""
    w, x, y, z = q
    return (w, x, -y, -z)


def rotation_in_body(rotation: Rotation, frame: np.ndarray) -> Rotation:
    """Express a world-frame rotation in body axes."""
    return Rotation.from_matrix(frame.T @ rotation.as_matrix() @ frame)


def rot_z(degrees: float) -> np.ndarray:
    return Rotation.from_euler("z", degrees, degrees=True).as_matrix()


def rot_x(degrees: float) -> np.ndarray:
    return Rotation.from_euler("x", degrees, degrees=True).as_matrix()


def wrap_degrees(angle: float) -> float:
    """Wrap to [-180, 180)."""
    return float((angle + 180.0) % 360.0 - 180.0)


def upper_arm_pair(alpha_s: float, alpha_c: float) -> tuple[float, float]:
    """Choose between the two (flexion, abduction) readings of one upper arm.

    The coronal angle measured against the shoulder axis never exceeds 90, so
    an arm abducted past horizontal first reads as flexed beyond 90 with a
    smaller abduction. (s, c) and (s -/+ 180, +/-180 - c) describe the same
    direction; the second is taken when it stays within the abduction limit.
    """
    if abs(alpha_s) > 90.0 and abs(alpha_c) >= 180.0 - ALPHA_C_LIMIT - 1e-6:
        alpha_s -= math.copysign(180.0, alpha_s)
        alpha_c = math.copysign(180.0, alpha_c) - alpha_c
    return alpha_s, alpha_c
