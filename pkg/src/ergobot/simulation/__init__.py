"""Closed-loop simulation of a user, the scorer, the planner and the robot."""

from ergobot.simulation.experiment import (
    load_experiment_spec,
    load_scenario,
    run_experiment,
)
from ergobot.simulation.human import HumanModel, solve_arm
from ergobot.simulation.plotting import plot_experiment
from ergobot.simulation.scenario import run_scenario, summarize_trace
from ergobot.simulation.workpiece import WorkpieceLimits, step_workpiece

__all__ = [
    "HumanModel",
    "WorkpieceLimits",
    "load_experiment_spec",
    "load_scenario",
    "plot_experiment",
    "run_experiment",
    "run_scenario",
    "solve_arm",
    "step_workpiece",
    "summarize_trace",
]
