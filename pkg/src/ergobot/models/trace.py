"""Trace models for Ergobot Core."""

from collections.abc import Iterator
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        def __str__(self) -> str:
            return str(self.value)

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ergobot.models.angles import ArmAngles
from ergobot.models.planning import Cause, ResponseCommand
from ergobot.models.scoring import RulaBreakdown
from ergobot.models.simulation import WorkpiecePose


class Phase(StrEnum):
    """Which part of a run a trace record belongs to."""

    REACH = "reach"
    DWELL = "dwell"
    REPLAY = "replay"


class TraceRecord(BaseModel):
    """One scored step."""

    model_config = ConfigDict(frozen=True)

    t: float
    angles: ArmAngles
    breakdown: RulaBreakdown
    cause: Cause | None = None
    command: ResponseCommand | None = None
    workpiece: WorkpiecePose | None = None
    target: int | None = None
    phase: Phase = Phase.REPLAY

    @model_validator(mode="after")
    def command_carries_cause(self) -> "TraceRecord":
        if self.command is not None and self.cause is not self.command.cause.cause:
            raise ValueError("command record must carry the command's cause")
        return self


class Trace(BaseModel):
    """Ordered records of a run, times non-decreasing."""

    records: list[TraceRecord] = Field(default_factory=list)

    @model_validator(mode="after")
    def monotone_times(self) -> "Trace":
        for previous, current in zip(self.records, self.records[1:], strict=False):
            if current.t < previous.t:
                raise ValueError(f"trace time decreases at t={current.t}")
        return self

    def append(self, record: TraceRecord) -> None:
        if self.records and record.t < self.records[-1].t:
            raise ValueError(f"trace time decreases at t={record.t}")
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TraceRecord]:  # type: ignore[override]
        return iter(self.records)

    def __getitem__(self, index: int) -> TraceRecord:
        return self.records[index]

    def commands(self) -> list[ResponseCommand]:
        return [r.command for r in self.records if r.command is not None]

    def arm_scores(self, phase: Phase | None = None) -> list[int]:
        return [
            r.breakdown.arm_score
            for r in self.records
            if phase is None or r.phase is phase
        ]
