"""Trace CSV writer and reader."""

import math
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import ValidationError

from ergobot.exceptions import TraceError
from ergobot.models.angles import ArmAngles
from ergobot.models.planning import Cause, Deviation, ResponseCommand
from ergobot.models.scoring import RulaBreakdown
from ergobot.models.simulation import WorkpiecePose
from ergobot.models.trace import Phase, Trace, TraceRecord
from ergobot.utils.logging import get_logger

logger = get_logger(__name__)

ANGLE_COLUMNS = ["alpha_s", "alpha_c", "beta_s", "beta_t", "gamma_b", "gamma_t"]
SCORE_COLUMNS = ["score_upper", "score_lower", "score_wrist", "score_twist", "rula_arm"]
COMMAND_COLUMNS = ["tx", "ty", "tz", "rot_z"]
WORKPIECE_COLUMNS = ["wp_x", "wp_y", "wp_z", "wp_yaw"]
COLUMNS = [
    "t",
    *ANGLE_COLUMNS,
    *SCORE_COLUMNS,
    "cause",
    *COMMAND_COLUMNS,
    *WORKPIECE_COLUMNS,
    "target",
    "phase",
]

FLOAT_FORMAT = "%.12g"


def _row(record: TraceRecord) -> dict[str, Any]:
    nan = math.nan
    breakdown = record.breakdown
    row: dict[str, Any] = {"t": record.t}
    row.update(zip(ANGLE_COLUMNS, record.angles.as_tuple(), strict=True))
    row.update(
        zip(
            SCORE_COLUMNS,
            (*breakdown.steps, breakdown.arm_score),
            strict=True,
        )
    )
    row["cause"] = record.cause.value if record.cause is not None else ""

    command = record.command
    if command is not None:
        values = (*command.translation, command.rotation_z)
        row.update(zip(COMMAND_COLUMNS, values, strict=True))
    else:
        row.update(dict.fromkeys(COMMAND_COLUMNS, nan))

    pose = record.workpiece
    if pose is not None:
        row.update(zip(WORKPIECE_COLUMNS, (*pose.position, pose.yaw), strict=True))
    else:
        row.update(dict.fromkeys(WORKPIECE_COLUMNS, nan))

    row["target"] = record.target
    row["phase"] = record.phase.value
    return row


def trace_frame(trace: Trace) -> pd.DataFrame:
    """Trace as a DataFrame with the CSV column layout."""
    df = pd.DataFrame([_row(record) for record in trace], columns=COLUMNS)
    df["target"] = df["target"].astype("Int64")
    return df


def write_timeseries(trace: Trace, destination: str | Path) -> None:
    """Write a trace as CSV, one row per record; empty cells mean none."""
    if len(trace) == 0:
        raise TraceError("cannot write an empty trace", {"path": str(destination)})
    df = trace_frame(trace)
    try:
        df.to_csv(
            destination,
            index=False,
            float_format=FLOAT_FORMAT,
            na_rep="",
            lineterminator="\n",
        )
    except OSError as e:
        raise TraceError(
            f"Cannot write trace {destination}: {e}", {"path": str(destination)}
        ) from e
    logger.info("Trace written", path=str(destination), records=len(trace))


def _optional(value: Any) -> float | None:
    return None if pd.isna(value) else float(value)


def _record(row: dict[str, Any]) -> TraceRecord:
    angles = ArmAngles(**{name: float(row[name]) for name in ANGLE_COLUMNS})
    breakdown = RulaBreakdown(
        upper=int(row["score_upper"]),
        lower=int(row["score_lower"]),
        wrist=int(row["score_wrist"]),
        twist=int(row["score_twist"]),
        arm_score=int(row["rula_arm"]),
    )
    cause_text = row["cause"]
    cause = None if pd.isna(cause_text) or cause_text == "" else Cause(cause_text)

    command = None
    translation = [_optional(row[name]) for name in ("tx", "ty", "tz")]
    rotation_z = _optional(row["rot_z"])
    if cause is not None and rotation_z is not None and None not in translation:
        command = ResponseCommand(
            translation=(translation[0], translation[1], translation[2]),
            rotation_z=rotation_z,
            cause=Deviation(cause=cause, magnitude=getattr(angles, cause.angle_name)),
            t=float(row["t"]),
        )

    pose_values = [_optional(row[name]) for name in WORKPIECE_COLUMNS]
    workpiece = None
    if None not in pose_values:
        x, y, z, yaw = (float(v) for v in pose_values)  # type: ignore[arg-type]
        workpiece = WorkpiecePose(position=(x, y, z), yaw=yaw)

    target = row["target"]
    return TraceRecord(
        t=float(row["t"]),
        angles=angles,
        breakdown=breakdown,
        cause=cause,
        command=command,
        workpiece=workpiece,
        target=None if pd.isna(target) else int(target),
        phase=Phase(row["phase"]),
    )


def read_timeseries(source: str | Path) -> Trace:
    """Parse a trace CSV written by write_timeseries."""
    try:
        df = pd.read_csv(
            source,
            dtype={"cause": "string", "phase": "string", "target": "Int64"},
            keep_default_na=False,
            na_values={name: [""] for name in COLUMNS if name not in ("cause", "phase")},
        )
    except (OSError, ValueError) as e:
        raise TraceError(f"Cannot read trace {source}: {e}", {"path": str(source)}) from e

    missing = [name for name in COLUMNS if name not in df.columns]
    if missing:
        raise TraceError(
            f"Trace {source} lacks columns: {', '.join(missing)}", {"missing": missing}
        )

    try:
        records = [_record(row) for row in df.to_dict(orient="records")]
        return Trace(records=records)
    except (ValidationError, ValueError, KeyError) as e:
        raise TraceError(f"Invalid trace {source}: {e}", {"path": str(source)}) from e
