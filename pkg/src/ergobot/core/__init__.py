"""Core scoring engine for Ergobot."""

from ergobot.core.angles import (
    calibrate,
    compute_arm_angles,
    compute_flags,
    lower_arm_sagittal,
    lower_arm_transversal,
    upper_arm_coronal,
    upper_arm_sagittal,
    wrist_angles,
)
from ergobot.core.pipeline import score_stream
from ergobot.core.planner import (
    ArbitrationState,
    Planner,
    arbitrate,
    classify,
    compute_response,
)
from ergobot.core.rula import TABLE_A, risk_band, score, step_scores, table_a

__all__ = [
    "TABLE_A",
    "ArbitrationState",
    "Planner",
    "arbitrate",
    "calibrate",
    "classify",
    "compute_arm_angles",
    "compute_flags",
    "compute_response",
    "lower_arm_sagittal",
    "lower_arm_transversal",
    "risk_band",
    "score",
    "score_stream",
    "step_scores",
    "table_a",
    "upper_arm_coronal",
    "upper_arm_sagittal",
    "wrist_angles",
]
