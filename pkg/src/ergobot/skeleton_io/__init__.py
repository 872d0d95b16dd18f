"""Frame stream and trace I/O, plus synthetic frame generation."""

from ergobot.skeleton_io.frame_stream import (
    parse_frame_stream,
    read_frames,
    write_frames,
)
from ergobot.skeleton_io.synthesis import (
    calibration_frames,
    frame_from_points,
    synth_frame,
)
from ergobot.skeleton_io.timeseries import COLUMNS, read_timeseries, write_timeseries

__all__ = [
    "COLUMNS",
    "calibration_frames",
    "frame_from_points",
    "parse_frame_stream",
    "read_frames",
    "read_timeseries",
    "synth_frame",
    "write_frames",
    "write_timeseries",
]
