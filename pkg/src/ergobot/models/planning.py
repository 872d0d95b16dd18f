"""Deviation and response command models for Ergobot Core."""

import math
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        def __str__(self) -> str:
            return str(self.value)

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ergobot.models.frames import Vector3


class Cause(StrEnum):
    """The six deviation causes, declared in response priority order."""

    UPPER_ARM_CORONAL = "UpperArmCoronal"
    LOWER_ARM_TRANSVERSAL = "LowerArmTransversal"
    WRIST_TRANSVERSAL = "WristTransversal"
    WRIST_SAGITTAL = "WristSagittal"
    UPPER_ARM_SAGITTAL = "UpperArmSagittal"
    LOWER_ARM_SAGITTAL = "LowerArmSagittal"

    @property
    def priority(self) -> int:
        """0 is the highest priority."""
        return list(Cause).index(self)

    @property
    def optimum(self) -> float:
        """Angle value, degrees, at which the cause is fully corrected."""
        return 90.0 if self is Cause.LOWER_ARM_SAGITTAL else 0.0

    @property
    def angle_name(self) -> str:
        """The ArmAngles field driving this cause."""
        return _ANGLE_FOR_CAUSE[self]


_ANGLE_FOR_CAUSE = {
    Cause.UPPER_ARM_CORONAL: "alpha_c",
    Cause.LOWER_ARM_TRANSVERSAL: "beta_t",
    Cause.WRIST_TRANSVERSAL: "gamma_t",
    Cause.WRIST_SAGITTAL: "gamma_b",
    Cause.UPPER_ARM_SAGITTAL: "alpha_s",
    Cause.LOWER_ARM_SAGITTAL: "beta_s",
}


class Deviation(BaseModel):
    """A triggered cause and its signed driving angle."""

    model_config = ConfigDict(frozen=True)

    cause: Cause
    magnitude: float = Field(..., description="Degrees, signed as in ArmAngles")


ZERO_VECTOR: Vector3 = (0.0, 0.0, 0.0)


class ResponseCommand(BaseModel):
    """Workpiece motion in the body frame (x right, y forward, z up)."""

    model_config = ConfigDict(frozen=True)

    translation: Vector3 = Field(ZERO_VECTOR, description="Meters, body frame")
    rotation_z: float = Field(0.0, description="Degrees about the vertical axis")
    cause: Deviation
    t: float | None = Field(None, description="Time of the emitting frame")

    @model_validator(mode="after")
    def motion_matches_cause(self) -> "ResponseCommand":
        if self.cause.cause is Cause.WRIST_TRANSVERSAL:
            if any(c != 0.0 for c in self.translation):
                raise ValueError("WristTransversal commands are rotation-only")
        elif self.rotation_z != 0.0:
            raise ValueError(f"{self.cause.cause} commands are translation-only")
        return self

    @property
    def translation_norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.translation))

    @property
    def is_zero(self) -> bool:
        return self.translation_norm == 0.0 and self.rotation_z == 0.0
