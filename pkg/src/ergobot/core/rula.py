"""RULA arm and wrist scoring (worksheet Steps 1 to 4 and Table A)."""

from typing import Literal

import numpy as np

from ergobot.exceptions import ScoringError
from ergobot.models.angles import ArmAngles
from ergobot.models.scoring import RulaBreakdown
from ergobot.utils.config import ScoringConfig

# Indexed [upper - 1][lower - 1][wrist - 1][twist - 1]
TABLE_A = np.array(
    [
        [
            [[1, 2], [2, 2], [2, 3], [3, 3]],
            [[2, 2], [2, 2], [3, 3], [3, 3]],
            [[2, 3], [3, 3], [3, 3], [4, 4]],
        ],
        [
            [[2, 3], [3, 3], [3, 4], [4, 4]],
            [[3, 3], [3, 3], [3, 4], [4, 4]],
            [[3, 4], [4, 4], [4, 4], [5, 5]],
        ],
        [
            [[3, 3], [4, 4], [4, 4], [5, 5]],
            [[3, 4], [4, 4], [4, 4], [5, 5]],
            [[4, 4], [4, 4], [4, 5], [5, 5]],
        ],
        [
            [[4, 4], [4, 4], [4, 5], [5, 5]],
            [[4, 4], [4, 4], [4, 5], [5, 5]],
            [[4, 4], [4, 5], [5, 5], [6, 6]],
        ],
        [
            [[5, 5], [5, 5], [5, 6], [6, 7]],
            [[5, 6], [6, 6], [6, 7], [7, 7]],
            [[6, 6], [6, 7], [7, 7], [7, 8]],
        ],
        [
            [[7, 7], [7, 7], [7, 8], [8, 9]],
            [[8, 8], [8, 8], [8, 9], [9, 9]],
            [[9, 9], [9, 9], [9, 9], [9, 9]],
        ],
    ],
    dtype=np.int8,
)
TABLE_A.setflags(write=False)

STEP_RANGES = {"upper": 6, "lower": 3, "wrist": 4, "twist": 2}

RiskBand = Literal["green", "yellow", "red"]


def step_scores(
    angles: ArmAngles, thresholds: ScoringConfig | None = None
) -> tuple[int, int, int, int]:
    """Worksheet step scores (upper, lower, wrist, twist)."""
    cfg = thresholds or ScoringConfig()

    alpha_s = angles.alpha_s
    if -cfg.upper_sagittal_band <= alpha_s <= cfg.upper_sagittal_band:
        upper = 1
    elif alpha_s < -cfg.upper_sagittal_band or alpha_s <= cfg.upper_mid:
        upper = 2
    elif alpha_s <= cfg.upper_high:
        upper = 3
    else:
        upper = 4
    if angles.alpha_c > cfg.abduction_threshold:
        upper += 1
    upper = min(upper, 6)

    low, high = cfg.lower_band
    lower = 1 if low <= angles.beta_s <= high else 2
    if abs(angles.beta_t) > cfg.transversal_threshold:
        lower += 1
    lower = min(lower, 3)

    deviation = abs(angles.gamma_t)
    if deviation <= cfg.wrist_deadband:
        wrist = 1
    elif deviation <= cfg.wrist_band:
        wrist = 2
    else:
        wrist = 3
    if abs(angles.gamma_b) > cfg.wrist_deadband:
        wrist += 1
    wrist = min(wrist, 4)

    # wrist twist is not measured
    twist = 1
    return upper, lower, wrist, twist


def table_a(upper: int, lower: int, wrist: int, twist: int) -> int:
    """Table A arm score for worksheet step scores."""
    for name, value in zip(STEP_RANGES, (upper, lower, wrist, twist), strict=True):
        if not 1 <= value <= STEP_RANGES[name]:
            raise ScoringError(
                f"{name} step score {value} outside 1..{STEP_RANGES[name]}",
                {"step": name, "value": value},
            )
    return int(TABLE_A[upper - 1, lower - 1, wrist - 1, twist - 1])


def score(angles: ArmAngles, config: ScoringConfig | None = None) -> RulaBreakdown:
    """Score one set of arm angles."""
    upper, lower, wrist, twist = step_scores(angles, config)
    return RulaBreakdown(
        upper=upper,
        lower=lower,
        wrist=wrist,
        twist=twist,
        arm_score=table_a(upper, lower, wrist, twist),
    )


def risk_band(arm_score: int) -> RiskBand:
    """Display colour for an arm score."""
    if arm_score <= 1:
        return "green"
    if arm_score == 2:
        return "yellow"
    return "red"
