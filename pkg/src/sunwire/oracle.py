"""Ground truth and baseline strategies.

sweep_argmax is the validation oracle: a brute-force grid evaluation of the
field at one instant, two orders of magnitude finer than the search cutoff
so grid error never masks algorithm error. The baselines bracket the
tracker: a robot that never moves, and one that physically measures the
whole wire before parking.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import DomainError
from .plant import Measurement, RobotPlant
from .report import TrialSummary
from .sts import PHASE_MONITORING, PHASE_SEARCHING, PHASE_SLEEP, StsParams, StsState

DEFAULT_GRID_DELTA_M = 0.01


@dataclass(frozen=True)
class SweepResult:
    """Argmax of available power over a position grid at one instant."""

    x_star_m: float
    p_star_w: float
    grid_delta_m: float


def sweep_argmax(field, t_s: float, delta_m: float = DEFAULT_GRID_DELTA_M) -> SweepResult:
    """Evaluate the field on the grid {0, d, 2d, ..., L} and return the
    maximum with its lowest attaining position."""
    length = field.length_m
    if not 0 < delta_m <= length:
        raise DomainError(f"grid delta {delta_m} outside (0, {length}]")
    x_star, p_star = kernels.sweep_max(
        field._env(), field._packed_shadows(), float(length), float(t_s), float(delta_m)
    )
    return SweepResult(x_star_m=x_star, p_star_w=p_star, grid_delta_m=delta_m)


def grid_positions(length_m: float, delta_m: float) -> list[float]:
    """The sweep grid as explicit positions (ends always included)."""
    n = int(length_m / delta_m + 1e-9)
    xs = [min(k * delta_m, length_m) for k in range(n + 1)]
    if xs[-1] < length_m:
        xs.append(length_m)
    return xs


def full_sweep_trial(state: StsState, plant: RobotPlant, field, params: StsParams,
                     rec, seed: Measurement, index: int = 0) -> TrialSummary:
    """Exhaustive physical sweep: traverse the wire measuring every
    min_step_m, then park at the best position seen.

    Plays the trial role inside the same state machine as the tracker, so
    reports and traces stay comparable. Distance per sweep is at least one
    full wire length.
    """
    state.phase = PHASE_SEARCHING
    state.dx_m = params.min_step_m
    state.ever_searched = True
    state.g_best_w = seed.power_w
    state.x_best_m = seed.x_m
    state.p0_w = seed.power_w
    state.inertia = params.inertia0
    state.direction = 1
    state.iter_count = 0
    t_start = plant.t_s
    odo_start = plant.odometer_m
    rec.emit("trial_start", plant.t_s, plant.x_m, seed.power_w,
             plant.battery.charge_j, plant.odometer_m)

    aborted = None
    for x_stop in grid_positions(field.span.length_m, params.min_step_m):
        arrived = plant.travel_to(field, x_stop)
        if plant.last_op_deficit_j > 0.0:
            aborted = "battery"
            break
        if not arrived:
            aborted = "timeout"
            break
        m = plant.measure_power(field, params.t_p_s)
        if m is None:
            aborted = "timeout"
            break
        if plant.last_op_deficit_j > 0.0:
            aborted = "battery"
            break
        if m.power_w > state.g_best_w:
            state.g_best_w = m.power_w
            state.x_best_m = m.x_m
        state.p0_w = m.power_w
        state.iter_count += 1

    search_distance = plant.odometer_m - odo_start
    return_distance = 0.0
    if aborted is None:
        odo_mid = plant.odometer_m
        arrived = plant.travel_to(field, state.x_best_m)
        return_distance = plant.odometer_m - odo_mid
        if plant.last_op_deficit_j > 0.0:
            aborted = "battery"
        elif not arrived:
            aborted = "timeout"

    state.phase = PHASE_SLEEP if aborted == "battery" else PHASE_MONITORING
    rec.emit("trial_end", plant.t_s, plant.x_m, 0.0,
             plant.battery.charge_j, plant.odometer_m)
    return TrialSummary(
        index=index,
        t_start_s=t_start,
        t_end_s=plant.t_s,
        dx_m=state.dx_m,
        iterations=state.iter_count,
        seed_power_w=seed.power_w,
        g_best_w=state.g_best_w,
        x_best_m=state.x_best_m,
        search_distance_m=search_distance,
        return_distance_m=return_distance,
        aborted=aborted,
    )
