"""Simulation orchestration: scenario in, report and trace out."""

from __future__ import annotations

from .oracle import full_sweep_trial
from .report import RunReport
from .scenario import Scenario
from .sts import StsState, run_machine, search_trial
from .trace import TraceRecord, TraceRecorder

_TRIAL_FNS = {
    "sts": search_trial,
    "fixed": None,
    "full_sweep": full_sweep_trial,
}


def run_simulation(scenario: Scenario, trace_path=None) -> tuple[RunReport, list[TraceRecord]]:
    """Execute one scenario deterministically.

    When trace_path is given the trace streams to it record by record, so
    an aborted run still leaves a valid CSV prefix on disk.
    """
    scenario.validate()
    sink = None
    try:
        if trace_path is not None:
            sink = open(trace_path, "w", encoding="utf-8", newline="")
        rec = TraceRecorder(sink=sink)
        field = scenario.build_field()
        plant = scenario.build_plant(recorder=rec)
        params = scenario.params
        state = StsState(x_best_m=plant.x_m)
        trial_fn = _TRIAL_FNS[scenario.strategy]
        trials = run_machine(state, plant, field, params, rec, trial_fn)
    finally:
        if sink is not None:
            sink.close()

    report = RunReport(
        scenario=scenario.name,
        seed=scenario.seed,
        strategy=scenario.strategy,
        duration_s=scenario.duration_s,
        trials=len(trials),
        final_g_best_w=state.g_best_w,
        final_x_best_m=state.x_best_m,
        harvested_j=plant.harvested_j,
        consumed_j=plant.consumed_j,
        overflow_j=plant.overflow_j,
        deficit_j=plant.deficit_j,
        net_j=plant.net_j,
        charge_start_j=plant.charge_start_j,
        charge_end_j=plant.battery.charge_j,
        distance_m=plant.odometer_m,
        trial_summaries=trials,
    )
    return report, rec.records
