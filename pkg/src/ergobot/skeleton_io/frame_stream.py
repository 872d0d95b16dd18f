"""JSON Lines sensor frame streams."""

import json
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import IO, Any

from pydantic import ValidationError

from ergobot.exceptions import FrameParseError, TraceError
from ergobot.models.frames import Handedness, SensorFrame, describe_joint
from ergobot.utils.logging import get_logger

logger = get_logger(__name__)

REQUIRED_KEYS = ("t", "joints", "imu_hand", "imu_forearm")


def _validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    message = str(first["msg"]).removeprefix("Value error, ")
    location = ".".join(str(part) for part in first["loc"])
    if message in ("non-unit orientation", "non-finite orientation"):
        return message
    return f"invalid {location}: {message}" if location else message


def _decode(line: bytes | str) -> str:
    if isinstance(line, bytes):
        return line.decode("utf-8")
    return line


def parse_frame_stream(
    source: IO[bytes] | IO[str] | Iterable[bytes | str],
    handedness: Handedness = Handedness.RIGHT,
) -> Iterator[SensorFrame]:
    """Yield validated frames in stream order.

    Blank lines are skipped. Every error names the offending line.
    """
    previous_t: float | None = None
    for line_number, raw in enumerate(source, start=1):
        try:
            text = _decode(raw).strip()
        except UnicodeDecodeError as e:
            raise FrameParseError("malformed record: not UTF-8", line_number) from e
        if not text:
            continue

        try:
            record: Any = json.loads(text)
        except json.JSONDecodeError as e:
            raise FrameParseError(f"malformed record: {e.msg}", line_number) from e
        if not isinstance(record, dict):
            raise FrameParseError("malformed record: expected an object", line_number)
        for key in REQUIRED_KEYS:
            if key not in record:
                raise FrameParseError(f"malformed record: missing {key}", line_number)

        try:
            frame = SensorFrame.model_validate(record)
        except ValidationError as e:
            raise FrameParseError(_validation_message(e), line_number) from e

        missing = frame.missing_joints(handedness)
        if missing:
            raise FrameParseError(
                f"missing joint: {describe_joint(missing[0])}", line_number, {"missing": missing}
            )
        if previous_t is not None and frame.t <= previous_t:
            raise FrameParseError(
                "non-monotone timestamp",
                line_number,
                {"t": frame.t, "previous_t": previous_t},
            )
        previous_t = frame.t
        yield frame


def read_frames(
    path: str | Path, handedness: Handedness = Handedness.RIGHT
) -> list[SensorFrame]:
    """Read and validate a whole frame file."""
    try:
        with open(path, "rb") as f:
            frames = list(parse_frame_stream(f, handedness))
    except OSError as e:
        raise TraceError(f"Cannot read frames file {path}: {e}", {"path": str(path)}) from e
    logger.info("Frames loaded", path=str(path), frames=len(frames))
    return frames


def frame_to_record(frame: SensorFrame) -> dict[str, Any]:
    return {
        "t": frame.t,
        "joints": {name: list(position) for name, position in frame.joints.items()},
        "imu_hand": list(frame.imu_hand),
        "imu_forearm": list(frame.imu_forearm),
    }


def write_frames(frames: Iterable[SensorFrame], destination: str | Path) -> int:
    """Write frames as JSON Lines; returns the number written."""
    count = 0
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as f:
            for frame in frames:
                f.write(json.dumps(frame_to_record(frame), separators=(",", ":")))
                f.write("\n")
                count += 1
    except OSError as e:
        raise TraceError(
            f"Cannot write frames file {destination}: {e}", {"path": str(destination)}
        ) from e
    logger.info("Frames written", path=str(destination), frames=count)
    return count
