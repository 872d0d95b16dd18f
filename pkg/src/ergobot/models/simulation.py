"""Simulation and experiment models for Ergobot Core."""

import math
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        def __str__(self) -> str:
            return str(self.value)
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ergobot.models.frames import Handedness, Vector3

# Human joint limits, degrees
BETA_S_LIMITS = (0.0, 160.0)
ALPHA_C_LIMIT = 120.0
BETA_T_LIMIT = 90.0
WRIST_LIMIT = 60.0


class Mode(StrEnum):
    """Experiment mode."""

    HUMAN_ONLY = "human-only"
    ROBOT_ASSISTED = "robot-assisted"


class ArmConfiguration(BaseModel):
    """Ground-truth arm posture, degrees, same semantics as ArmAngles."""

    model_config = ConfigDict(frozen=True)

    alpha_s: float = Field(0.0, ge=-180.0, le=180.0)
    alpha_c: float = Field(0.0, ge=-ALPHA_C_LIMIT, le=ALPHA_C_LIMIT)
    beta_s: float = Field(90.0, ge=BETA_S_LIMITS[0], le=BETA_S_LIMITS[1])
    beta_t: float = Field(0.0, ge=-BETA_T_LIMIT, le=BETA_T_LIMIT)
    gamma_b: float = Field(0.0, ge=-WRIST_LIMIT, le=WRIST_LIMIT)
    gamma_t: float = Field(0.0, ge=-WRIST_LIMIT, le=WRIST_LIMIT)
    gamma_w: float = Field(0.0, description="Wrist twist, carried through only")
    saturated: bool = Field(False, description="Reach clamped short of the target")

    @field_validator("*")
    @classmethod
    def finite(cls, v: Any) -> Any:
        if isinstance(v, float) and not math.isfinite(v):
            raise ValueError("configuration angle must be finite")
        return v

    @classmethod
    def neutral(cls) -> "ArmConfiguration":
        return cls()

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.alpha_s,
            self.alpha_c,
            self.beta_s,
            self.beta_t,
            self.gamma_b,
            self.gamma_t,
        )


class Anthropometrics(BaseModel):
    """Limb lengths and shoulder height of the simulated user, meters."""

    model_config = ConfigDict(frozen=True)

    upper_arm_length: float = Field(0.30, gt=0)
    forearm_length: float = Field(0.25, gt=0)
    tool_length: float = Field(0.25, gt=0)
    shoulder_height: float = Field(1.45, gt=0)

    @property
    def a(self) -> float:
        return self.upper_arm_length

    @property
    def b(self) -> float:
        return self.forearm_length

    @property
    def L(self) -> float:  # noqa: N802
        return self.tool_length

    @property
    def shoulder(self) -> Vector3:
        """Active shoulder position in the world frame."""
        return (0.0, 0.0, self.shoulder_height)


class WorkpiecePose(BaseModel):
    """Workpiece pose held by the robot, world frame."""

    model_config = ConfigDict(frozen=True)

    position: Vector3
    yaw: float = Field(0.0, description="Degrees about the vertical axis")


class Target(BaseModel):
    """A point on the workpiece the user has to reach."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1)
    local: Vector3 = Field(..., description="Workpiece-local coordinates (m)")
    face: str | None = Field(None, description="Box face label, top or bottom")


class Scenario(BaseModel):
    """One closed-loop run: a user, a workpiece and a target sequence."""

    model_config = ConfigDict(frozen=True)

    name: str = "scenario"
    anthropometrics: Anthropometrics = Field(default_factory=Anthropometrics)
    initial_workpiece: WorkpiecePose
    targets: list[Target] = Field(..., min_length=1)
    dwell_s: float | None = Field(
        None, gt=0, description="Dwell per target (s); None uses the simulation config"
    )
    mode: Mode = Mode.ROBOT_ASSISTED
    seed: int = 0
    handedness: Handedness = Handedness.RIGHT
    initial_posture: ArmConfiguration | None = Field(
        None, description="Posture whose tool tip defines the first target"
    )
    reset_between_targets: bool = False
    target_jitter_m: float = Field(0.0, ge=0)


class ExperimentSpec(BaseModel):
    """Parameters of the two-mode box experiment."""

    model_config = ConfigDict(frozen=True)

    name: str = "box-experiment"
    anthropometrics: Anthropometrics = Field(default_factory=Anthropometrics)
    initial_workpiece: WorkpiecePose
    box_size: Vector3 = (0.4, 0.3, 0.3)
    load_kg: float = Field(0.9, ge=0, description="Carried load, metadata only")
    targets: list[Target] = Field(..., min_length=1)
    modes: list[Mode] = Field(
        default_factory=lambda: [Mode.HUMAN_ONLY, Mode.ROBOT_ASSISTED], min_length=1
    )
    trials_per_mode: int = Field(3, ge=1)
    dwell_s: float | None = Field(
        None, gt=0, description="Dwell per target (s); None uses the simulation config"
    )
    seed: int = 0
    handedness: Handedness = Handedness.RIGHT
    reset_between_targets: bool = True
    target_jitter_m: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def faces_alternate(self) -> "ExperimentSpec":
        for target in self.targets:
            if target.face is None:
                continue
            expected = "bottom" if target.index % 2 else "top"
            if target.face != expected:
                raise ValueError(
                    f"target {target.index} must lie on the {expected} face"
                )
        indices = [target.index for target in self.targets]
        if len(set(indices)) != len(indices):
            raise ValueError("target indices must be unique")
        return self

    def scenario(self, mode: Mode, trial: int) -> Scenario:
        """Scenario for one trial of one mode."""
        return Scenario(
            name=f"{self.name}-{mode.value}-{trial}",
            anthropometrics=self.anthropometrics,
            initial_workpiece=self.initial_workpiece,
            targets=self.targets,
            dwell_s=self.dwell_s,
            mode=mode,
            seed=self.seed + trial,
            handedness=self.handedness,
            reset_between_targets=self.reset_between_targets,
            target_jitter_m=self.target_jitter_m,
        )


class TargetStats(BaseModel):
    """Dwell-phase arm score statistics for one target in one mode."""

    target: int
    mode: Mode
    mean: float = Field(..., ge=1, le=9)
    max: int = Field(..., ge=1, le=9)
    samples: int = Field(..., ge=1)


class TrialSummary(BaseModel):
    """Outcome of one scenario run inside an experiment."""

    mode: Mode
    trial: int
    seed: int
    commands: int
    mean_arm_score: float
    trace_file: str
    trace_digest: str


class ExperimentReport(BaseModel):
    """Aggregated experiment results."""

    name: str
    seed: int
    load_kg: float
    targets: list[TargetStats]
    trials: list[TrialSummary]
    spec: dict[str, Any]
    config: dict[str, Any]
    digest: str | None = None

    def stats_for(self, mode: Mode) -> dict[int, TargetStats]:
        return {s.target: s for s in self.targets if s.mode is mode}
