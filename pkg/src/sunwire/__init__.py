"""sunwire: deterministic simulator for a solar-tracking wire robot.

A robot hanging from a wire between trees searches the wire for the
position of maximum photovoltaic power under a drifting, tree-shadowed
irradiance field, trading harvested energy against locomotion cost. The
package provides the power-field model, the robot plant with its battery
ledger, the damped 1-D search state machine, brute-force oracles and
baselines, and a scenario-driven CLI harness with byte-reproducible traces.
"""

from .errors import ContractViolation, DomainError, ScenarioError
from .field import FrozenField, PowerField, ShadowBand, SunEnvelope, WireSpan
from .kernels import backend_name
from .oracle import SweepResult, full_sweep_trial, sweep_argmax
from .plant import Battery, Measurement, PowerBudget, RobotPlant
from .report import RunReport, TrialSummary, compare
from .runner import run_simulation
from .scenario import Scenario, load_scenario, parse_scenario
from .sts import (
    StsParams,
    StsState,
    condition_a,
    constrain_bounds,
    decide_direction,
    monitor_cycle,
    propose_next,
    run_machine,
    search_trial,
    update_inertia,
    wake_gate,
)
from .trace import TraceRecord, TraceRecorder, emit_csv, parse_csv

__version__ = "0.1.0"

__all__ = [
    "Battery",
    "ContractViolation",
    "DomainError",
    "FrozenField",
    "Measurement",
    "PowerBudget",
    "PowerField",
    "RobotPlant",
    "RunReport",
    "Scenario",
    "ScenarioError",
    "ShadowBand",
    "StsParams",
    "StsState",
    "SunEnvelope",
    "SweepResult",
    "TraceRecord",
    "TraceRecorder",
    "TrialSummary",
    "WireSpan",
    "backend_name",
    "compare",
    "condition_a",
    "constrain_bounds",
    "decide_direction",
    "emit_csv",
    "full_sweep_trial",
    "load_scenario",
    "monitor_cycle",
    "parse_csv",
    "parse_scenario",
    "propose_next",
    "run_machine",
    "run_simulation",
    "search_trial",
    "sweep_argmax",
    "update_inertia",
    "wake_gate",
]
