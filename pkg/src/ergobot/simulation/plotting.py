"""Grouped bar chart of per-target mean arm scores."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from ergobot.exceptions import TraceError  # noqa: E402
from ergobot.utils.logging import get_logger  # noqa: E402

logger = get_logger(__name__)

BAR_WIDTH = 0.38
MODE_COLORS = {"human-only": "#c0504d", "robot-assisted": "#4f81bd"}


def plot_experiment(bar_csv: str | Path, svg_path: str | Path) -> None:
    """Render the bar-data CSV written by run_experiment as an SVG."""
    try:
        bars = pd.read_csv(bar_csv)
    except (OSError, ValueError) as e:
        raise TraceError(f"Cannot read bar data {bar_csv}: {e}", {"path": str(bar_csv)}) from e
    if "target" not in bars.columns:
        raise TraceError(f"Bar data {bar_csv} lacks a target column", {"path": str(bar_csv)})

    modes = [column for column in bars.columns if column != "target"]
    positions = np.arange(len(bars))
    offsets = (np.arange(len(modes)) - (len(modes) - 1) / 2) * BAR_WIDTH

    # fixed metadata keeps the SVG byte-stable between runs
    plt.rcParams["svg.hashsalt"] = "ergobot"
    fig, ax = plt.subplots(figsize=(7, 4))
    try:
        for mode, offset in zip(modes, offsets, strict=True):
            ax.bar(
                positions + offset,
                bars[mode],
                BAR_WIDTH,
                label=mode,
                color=MODE_COLORS.get(mode),
            )
        ax.set_xticks(positions)
        ax.set_xticklabels([str(t) for t in bars["target"]])
        ax.set_xlabel("Target")
        ax.set_ylabel("Mean RULA arm score")
        ax.set_ylim(0, max(4.0, float(bars[modes].max().max()) + 0.5))
        ax.axhline(1.0, color="grey", linewidth=0.8, linestyle="--")
        ax.legend()
        fig.tight_layout()
        fig.savefig(svg_path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise TraceError(f"Cannot write {svg_path}: {e}", {"path": str(svg_path)}) from e
    finally:
        plt.close(fig)
    logger.info("Plot written", path=str(svg_path), targets=len(bars))
