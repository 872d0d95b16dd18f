"""Arm angle and calibration models for Ergobot Core."""

import math
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ergobot.models.frames import Handedness, Quaternion, quaternion_norm

ANGLE_NAMES: tuple[str, ...] = (
    "alpha_s",
    "alpha_c",
    "beta_s",
    "beta_t",
    "gamma_b",
    "gamma_t",
)


class ArmAngles(BaseModel):
    """Signed projected arm angles, degrees."""

    model_config = ConfigDict(frozen=True)

    alpha_s: float = Field(
        ..., ge=-180.0, le=180.0, description="Upper-arm sagittal, + = flexion"
    )
    alpha_c: float = Field(
        ..., ge=-180.0, le=180.0, description="Upper-arm coronal, + = abduction"
    )
    beta_s: float = Field(..., ge=0.0, le=180.0, description="Elbow flexion")
    beta_t: float = Field(
        ..., description="Lower-arm transversal, + = lateral, - = across midline"
    )
    gamma_b: float = Field(..., description="Wrist sagittal bend, + = hand up")
    gamma_t: float = Field(..., description="Wrist transversal deviation")
    gamma_w: float = Field(0.0, description="Wrist twist, ignored by scoring")
    wrist_saturated: bool = Field(
        False, description="Wrist decomposition near gimbal lock"
    )

    @field_validator("alpha_s", "alpha_c", "beta_s", "beta_t", "gamma_b", "gamma_t", "gamma_w")
    @classmethod
    def finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("angle must be finite")
        return v

    @classmethod
    def neutral(cls) -> "ArmAngles":
        """The ergonomic optimum / calibration posture."""
        return cls(alpha_s=0.0, alpha_c=0.0, beta_s=90.0, beta_t=0.0, gamma_b=0.0, gamma_t=0.0)

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        """The six scored angles in canonical order."""
        return (
            self.alpha_s,
            self.alpha_c,
            self.beta_s,
            self.beta_t,
            self.gamma_b,
            self.gamma_t,
        )


class DeviationFlags(BaseModel):
    """Direction flags backing up the unsigned angle formulas."""

    model_config = ConfigDict(frozen=True)

    upper_forward: bool
    upper_abducted_lateral: bool
    forearm_lateral: bool
    wrist_up: bool


class AngleOffsets(BaseModel):
    """Additive per-angle corrections, degrees."""

    model_config = ConfigDict(frozen=True)

    alpha_s: float = 0.0
    alpha_c: float = 0.0
    beta_s: float = 0.0
    beta_t: float = 0.0
    gamma_b: float = 0.0
    gamma_t: float = 0.0


IDENTITY_QUATERNION: Quaternion = (1.0, 0.0, 0.0, 0.0)


class CalibrationProfile(BaseModel):
    """Per-user calibration: limb lengths, angle offsets and wrist reference."""

    model_config = ConfigDict(frozen=True)

    upper_arm_length: float = Field(..., gt=0, description="a: shoulder-elbow (m)")
    forearm_length: float = Field(..., gt=0, description="b: elbow-wrist (m)")
    tool_length: float = Field(
        0.25, gt=0, description="L: hand plus tool length (m), configured"
    )
    offsets: AngleOffsets = Field(default_factory=AngleOffsets)
    r_ref: Quaternion = Field(
        IDENTITY_QUATERNION,
        description="Calibration hand-relative-to-forearm orientation, body frame",
    )
    elbow_hip_baseline: float | None = Field(
        None, gt=0, description="Calibrated elbow-hip distance (m)"
    )
    wrist_elbow_baseline: float | None = Field(
        None, gt=0, description="Calibrated wrist-elbow distance (m)"
    )
    handedness: Handedness = Handedness.RIGHT
    window_frames: int = Field(0, ge=0, description="Frames averaged at calibration")

    @field_validator("r_ref")
    @classmethod
    def unit_reference(cls, v: Quaternion) -> Quaternion:
        if abs(quaternion_norm(v) - 1.0) > 1e-6:
            raise ValueError("non-unit reference orientation")
        return v

    @property
    def a(self) -> float:
        return self.upper_arm_length

    @property
    def b(self) -> float:
        return self.forearm_length

    @property
    def L(self) -> float:  # noqa: N802
        return self.tool_length

    @classmethod
    def identity(
        cls,
        upper_arm_length: float = 0.30,
        forearm_length: float = 0.25,
        tool_length: float = 0.25,
        handedness: Handedness = Handedness.RIGHT,
    ) -> "CalibrationProfile":
        """Profile with zero offsets and identity wrist reference."""
        return cls(
            upper_arm_length=upper_arm_length,
            forearm_length=forearm_length,
            tool_length=tool_length,
            handedness=handedness,
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.model_dump_json(indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "CalibrationProfile":
        return cls.model_validate_json(Path(path).read_text())
