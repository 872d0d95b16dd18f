"""RULA score models for Ergobot Core."""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class RulaBreakdown(BaseModel):
    """Per-step worksheet scores and the resulting Table A arm score."""

    model_config = ConfigDict(frozen=True)

    upper: int = Field(..., ge=1, le=6, description="Step 1, upper arm")
    lower: int = Field(..., ge=1, le=3, description="Step 2, lower arm")
    wrist: int = Field(..., ge=1, le=4, description="Step 3, wrist")
    twist: int = Field(1, ge=1, le=2, description="Step 4, wrist twist")
    arm_score: int = Field(..., ge=1, le=9, description="Table A arm score")

    @model_validator(mode="after")
    def arm_score_matches_table(self) -> "RulaBreakdown":
        from ergobot.core.rula import table_a

        expected = table_a(self.upper, self.lower, self.wrist, self.twist)
        if self.arm_score != expected:
            raise ValueError(
                f"arm_score {self.arm_score} does not match Table A value {expected}"
            )
        return self

    @property
    def steps(self) -> tuple[int, int, int, int]:
        return (self.upper, self.lower, self.wrist, self.twist)
