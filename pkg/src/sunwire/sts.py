"""Solar-tracking search over the wire, as an explicit state machine.

Three phases. Sleep: the robot wakes every recheck interval, samples power,
and stays down while the reading is at or below the wake threshold.
Searching: a trial walks the wire in steps of dx scaled by an inertia
coefficient, keeps global-best bookkeeping, and parks at the best position
found; the inertia damps geometrically on every step that fails to improve
the best, so the walk marches at full stride and shrinks while it brackets
the peak. Monitoring: the parked robot re-samples every monitor period and
re-triggers a finer search when power has dropped more than the re-trigger
fraction below the stored best.

The first trial of a run uses the coarse base step; every re-triggered
trial uses the fine one. The direction rule keeps heading on improvement
and flips otherwise (ties flip); a boundary clamp overrides the rule and
forces the next step inward.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import WireSpan
from .plant import MODE_IDLE, MODE_SLEEP, Measurement, RobotPlant
from .report import TrialSummary

PHASE_SLEEP = "Sleep"
PHASE_SEARCHING = "Searching"
PHASE_MONITORING = "Monitoring"

HIT_LOW = "low"
HIT_HIGH = "high"

_EPS = 1e-9


@dataclass
class StsParams:
    """All tunables of the tracking algorithm.

    Defaults carry the reference constants: 0.05 W wake threshold, 0.2
    re-trigger fraction, 7.8 m coarse and 2.25 m fine base steps, and a
    50 ms minimum measurement settle time.
    """

    wake_threshold_w: float = 0.05
    retrigger_frac: float = 0.2
    dx_coarse_m: float = 7.8
    dx_fine_m: float = 2.25
    inertia0: float = 1.0
    zeta: float = 0.7
    min_step_m: float = 0.1
    max_iters: int = 50
    t_p_s: float = 0.05
    monitor_period_s: float = 60.0
    sleep_recheck_s: float = 300.0
    reset_g_best_on_wake: bool = False

    def validate(self) -> list[tuple[str, str]]:
        bad = []
        if not 0 < self.zeta < 1:
            bad.append(("zeta", "damping coefficient must lie in (0, 1)"))
        if not self.dx_coarse_m > 0:
            bad.append(("dx_coarse_m", "coarse step must be > 0"))
        if not 0 < self.dx_fine_m < self.dx_coarse_m:
            bad.append(("dx_fine_m", "fine step must satisfy 0 < fine < coarse"))
        if not self.min_step_m > 0:
            bad.append(("min_step_m", "convergence cutoff must be > 0"))
        if not self.inertia0 > 0:
            bad.append(("inertia0", "initial inertia must be > 0"))
        if self.max_iters < 1:
            bad.append(("max_iters", "iteration cap must be >= 1"))
        if self.t_p_s < 0.05:
            bad.append(("t_p_s", "settle time must be >= 0.05 s"))
        if not self.monitor_period_s > 0:
            bad.append(("monitor_period_s", "monitor period must be > 0"))
        if not self.sleep_recheck_s > 0:
            bad.append(("sleep_recheck_s", "sleep recheck interval must be > 0"))
        if self.wake_threshold_w < 0:
            bad.append(("wake_threshold_w", "wake threshold must be >= 0"))
        if not 0 < self.retrigger_frac < 1:
            bad.append(("retrigger_frac", "re-trigger fraction must lie in (0, 1)"))
        return bad


@dataclass
class StsState:
    """Live search state: phase, best bookkeeping, step dynamics."""

    phase: str = PHASE_SLEEP
    g_best_w: float = 0.0
    x_best_m: float = 0.0
    p0_w: float = 0.0
    inertia: float = 1.0
    dx_m: float = 0.0
    direction: int = 1
    iter_count: int = 0
    ever_searched: bool = False


# -- elementary decisions ------------------------------------------------


def wake_gate(p0_w: float, params: StsParams) -> bool:
    """True (awake) iff the reading strictly exceeds the wake threshold."""
    return p0_w > params.wake_threshold_w


def condition_a(p0_w: float, g_best_w: float, params: StsParams) -> bool:
    """Launch predicate: no best exists yet, or power fell more than the
    re-trigger fraction below it."""
    return g_best_w == 0.0 or p0_w < (g_best_w - g_best_w * params.retrigger_frac)


def propose_next(x_prev_m: float, dx_m: float, inertia: float, direction: int) -> float:
    """Next position: previous plus the signed inertia-scaled step."""
    return x_prev_m + direction * (dx_m * inertia)


def constrain_bounds(x_proposed_m: float, span: WireSpan):
    """Clamp a proposal to the wire. Returns (x, hit) where hit reports the
    struck boundary (HIT_LOW / HIT_HIGH) or None."""
    if x_proposed_m < 0.0:
        return 0.0, HIT_LOW
    if x_proposed_m > span.length_m:
        return span.length_m, HIT_HIGH
    return x_proposed_m, None


def update_inertia(inertia: float, params: StsParams) -> float:
    """Geometric damping: one application of the decay coefficient."""
    return inertia * params.zeta


def decide_direction(p0_w: float, p_i_w: float, direction: int) -> int:
    """Keep heading on improvement, flip on a tie or a worse reading."""
    return direction if p_i_w > p0_w else -direction


# -- search trial ----------------------------------------------------------


def search_trial(state: StsState, plant: RobotPlant, field, params: StsParams,
                 rec, seed: Measurement, index: int = 0) -> TrialSummary:
    """Run one damped search trial seeded by the measurement that fired it.

    Loops propose / clamp / travel / settle / measure. A reading that beats
    the global best keeps heading and stride; any other reading picks a new
    direction and damps the inertia one notch. The loop ends when the
    effective step falls below the cutoff or the iteration cap is hit, then
    returns to the best position and enters Monitoring. A drained battery
    aborts the trial in place (the physical robot self-locks); the run end
    mid-trial aborts it too.
    """
    state.phase = PHASE_SEARCHING
    state.dx_m = params.dx_fine_m if state.ever_searched else params.dx_coarse_m
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
    while (state.iter_count < params.max_iters
           and state.dx_m * state.inertia >= params.min_step_m):
        x_prop = propose_next(plant.x_m, state.dx_m, state.inertia, state.direction)
        x_target, hit = constrain_bounds(x_prop, field.span)
        if hit is not None:
            rec.emit("clamp", plant.t_s, plant.x_m, 0.0,
                     plant.battery.charge_j, plant.odometer_m)
        arrived = plant.travel_to(field, x_target)
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
        p_i = m.power_w
        if p_i > state.g_best_w:
            # New global best: keep heading, keep the step size.
            state.g_best_w = p_i
            state.x_best_m = m.x_m
        else:
            # Unsuccessful step: pick a direction and damp the inertia.
            if hit is None:
                state.direction = decide_direction(state.p0_w, p_i, state.direction)
            state.inertia = update_inertia(state.inertia, params)
        # A boundary hit overrides the measurement-based rule: head back in.
        if hit == HIT_LOW:
            state.direction = 1
        elif hit == HIT_HIGH:
            state.direction = -1
        state.p0_w = p_i
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


# -- monitor and top-level machine ----------------------------------------


def monitor_cycle(state: StsState, plant: RobotPlant, field, params: StsParams,
                  rec, trial_fn, index: int) -> TrialSummary | None:
    """One monitoring period: idle, sample, then decide.

    Gate closed sends the machine to Sleep; the launch predicate (when the
    strategy searches at all) fires a re-triggered trial seeded by this
    sample; otherwise the machine keeps monitoring.
    """
    if plant.remaining_s() < params.monitor_period_s - _EPS:
        rem = plant.remaining_s()
        if rem > _EPS:
            plant.advance(field, rem, MODE_IDLE)
        return None
    idle_s = params.monitor_period_s - params.t_p_s
    if idle_s > _EPS:
        plant.advance(field, idle_s, MODE_IDLE)
    m = plant.measure_power(field, params.t_p_s)
    if m is None:
        return None
    state.p0_w = m.power_w
    if not wake_gate(m.power_w, params):
        state.phase = PHASE_SLEEP
        rec.emit("sleep", plant.t_s, plant.x_m, m.power_w,
                 plant.battery.charge_j, plant.odometer_m)
        return None
    if trial_fn is not None and condition_a(m.power_w, state.g_best_w, params):
        rec.emit("retrigger", plant.t_s, plant.x_m, m.power_w,
                 plant.battery.charge_j, plant.odometer_m)
        return trial_fn(state, plant, field, params, rec, m, index)
    return None


def run_machine(state: StsState, plant: RobotPlant, field, params: StsParams,
                rec, trial_fn) -> list[TrialSummary]:
    """Drive the Sleep / Searching / Monitoring machine to the end time.

    trial_fn(state, plant, field, params, rec, seed, index) runs one search
    and returns its summary; None disables searching entirely (the fixed
    baseline). Returns the summaries of all trials run.
    """
    trials: list[TrialSummary] = []
    rec.bind(state)
    while not plant.at_end():
        if state.phase == PHASE_SEARCHING:
            # A trial never leaves the machine here; recover defensively.
            state.phase = PHASE_MONITORING
        if state.phase == PHASE_SLEEP:
            if plant.remaining_s() < params.t_p_s - _EPS:
                rem = plant.remaining_s()
                if rem > _EPS:
                    plant.advance(field, rem, MODE_SLEEP)
                continue
            m = plant.measure_power(field, params.t_p_s)
            if m is None:
                continue
            state.p0_w = m.power_w
            if wake_gate(m.power_w, params):
                if params.reset_g_best_on_wake and state.ever_searched:
                    state.g_best_w = 0.0
                rec.emit("wake", plant.t_s, plant.x_m, m.power_w,
                         plant.battery.charge_j, plant.odometer_m)
                if trial_fn is not None and condition_a(m.power_w, state.g_best_w, params):
                    trials.append(
                        trial_fn(state, plant, field, params, rec, m, len(trials))
                    )
                else:
                    state.phase = PHASE_MONITORING
            else:
                sleep_s = min(params.sleep_recheck_s, plant.remaining_s())
                if sleep_s > _EPS:
                    plant.advance(field, sleep_s, MODE_SLEEP)
        elif state.phase == PHASE_MONITORING:
            summary = monitor_cycle(state, plant, field, params, rec,
                                    trial_fn, len(trials))
            if summary is not None:
                trials.append(summary)
    return trials
