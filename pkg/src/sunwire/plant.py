"""Robot plant: a kinematic point on the wire with a battery and a clock.

The plant owns the simulation clock and the energy ledger. Time advances in
fixed steps (default 1 s) with the final partial step shortened to land
exactly on arrival and measurement instants. Harvested power flows through
the converter efficiency in every mode (the panel is hardwired to the
charger); each operating mode has a fixed electrical draw. The converter's
internal MPP tracking is not simulated: a measurement is exact once the
robot has dwelt at least the settle time at its position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .errors import ContractViolation, DomainError

MODE_MOVE = "move"
MODE_IDLE = "idle"
MODE_SLEEP = "sleep"

# Clock comparisons tolerate this much rounding debris, in seconds.
_TIME_EPS = 1e-9


@dataclass
class Battery:
    """Stored energy with a linear state-of-charge to voltage map."""

    capacity_j: float = 16000.0
    charge_j: float = 8000.0
    v_full: float = 8.2
    v_empty: float = 4.0

    def validate(self) -> list[tuple[str, str]]:
        bad = []
        if not self.capacity_j > 0:
            bad.append(("capacity_j", "battery capacity must be > 0"))
        if not 0 <= self.charge_j <= self.capacity_j:
            bad.append(("charge0_j", "initial charge must lie in [0, capacity]"))
        if not self.v_empty < self.v_full:
            bad.append(("v_empty", "v_empty must be below v_full"))
        return bad

    @property
    def soc(self) -> float:
        return self.charge_j / self.capacity_j

    @property
    def terminal_voltage(self) -> float:
        return self.v_empty + (self.v_full - self.v_empty) * self.soc


@dataclass
class PowerBudget:
    """Electrical draw per operating mode and the DC-DC conversion
    efficiency applied to harvested power."""

    p_move_w: float = 2.0
    p_idle_w: float = 0.25
    p_sleep_w: float = 0.02
    eta_conv: float = 0.90

    def validate(self) -> list[tuple[str, str]]:
        bad = []
        if not self.p_sleep_w <= self.p_idle_w <= self.p_move_w:
            bad.append(("p_idle_w", "draws must satisfy p_sleep <= p_idle <= p_move"))
        if not 0 < self.eta_conv <= 1:
            bad.append(("eta_conv", "conversion efficiency must lie in (0, 1]"))
        return bad

    def draw(self, mode: str) -> float:
        if mode == MODE_MOVE:
            return self.p_move_w
        if mode == MODE_IDLE:
            return self.p_idle_w
        if mode == MODE_SLEEP:
            return self.p_sleep_w
        raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class Measurement:
    """One settled power reading at a position and instant."""

    power_w: float
    x_m: float
    t_s: float


class RobotPlant:
    """Mutable simulation state: position, clock, battery, odometer.

    One simulation owns one plant; operations mutate it sequentially.
    ``recorder`` (optional) receives move / measure / saturation events.
    """

    def __init__(
        self,
        x_m: float = 8.0,
        speed_mps: float = 1.0 / 60.0,
        battery: Battery | None = None,
        budget: PowerBudget | None = None,
        dt_s: float = 1.0,
        settle_s: float = 0.05,
        end_time_s: float = math.inf,
        recorder=None,
    ):
        self.x_m = float(x_m)
        self.t_s = 0.0
        self.speed_mps = float(speed_mps)
        self.battery = battery if battery is not None else Battery()
        self.budget = budget if budget is not None else PowerBudget()
        self.dt_s = float(dt_s)
        self.settle_s = float(settle_s)
        self.end_time_s = float(end_time_s)
        self.recorder = recorder
        self.odometer_m = 0.0
        self.charge_start_j = self.battery.charge_j
        self.harvested_j = 0.0
        self.consumed_j = 0.0
        self.overflow_j = 0.0
        self.deficit_j = 0.0
        self.last_op_deficit_j = 0.0
        self.saturation_events = 0

    # -- clock ---------------------------------------------------------

    def remaining_s(self) -> float:
        return self.end_time_s - self.t_s

    def at_end(self) -> bool:
        return self.remaining_s() <= _TIME_EPS

    # -- energy integration -------------------------------------------

    def _integrate(self, field, duration_s: float, v_mps: float, draw_w: float) -> None:
        """Run the kernel across duration_s and fold the results into the
        ledger. Caller has already clipped duration to the scenario end."""
        t0 = self.t_s
        charge, harvested, consumed, overflow, deficit = kernels.integrate(
            field._env(),
            field._packed_shadows(),
            self.x_m,
            v_mps,
            t0,
            duration_s,
            self.dt_s,
            draw_w,
            self.budget.eta_conv,
            self.battery.charge_j,
            self.battery.capacity_j,
        )
        self.battery.charge_j = charge
        self.harvested_j += harvested
        self.consumed_j += consumed
        self.overflow_j += overflow
        self.deficit_j += deficit
        self.last_op_deficit_j = deficit
        t_end = t0 + duration_s
        x_end = self.x_m + v_mps * duration_s
        if overflow > 0.0:
            self.saturation_events += 1
            if self.recorder is not None:
                self.recorder.emit("saturation", t_end, x_end, overflow,
                                   charge, self.odometer_m)
        if deficit > 0.0:
            self.saturation_events += 1
            if self.recorder is not None:
                self.recorder.emit("saturation", t_end, x_end, deficit,
                                   charge, self.odometer_m)

    def advance(self, field, dt_s: float, mode: str) -> float:
        """Let dt_s seconds pass in the given mode, harvesting throughout.

        Clips at the scenario end time. Returns the seconds actually
        simulated.
        """
        if dt_s <= 0:
            raise ValueError(f"advance needs dt > 0, got {dt_s}")
        clipped = dt_s > self.remaining_s()
        actual = self.remaining_s() if clipped else dt_s
        if actual <= _TIME_EPS:
            return 0.0
        self._integrate(field, actual, 0.0, self.budget.draw(mode))
        self.t_s = self.end_time_s if clipped else self.t_s + actual
        return actual

    # -- motion --------------------------------------------------------

    def travel_to(self, field, target_m: float) -> bool:
        """Move to target_m at constant speed, drawing move power.

        Returns True on arrival; False if the scenario ended mid-leg (the
        plant then sits wherever the clock ran out).
        """
        if not field.span.contains(target_m):
            raise DomainError(
                f"travel target {target_m} outside wire [0, {field.span.length_m}]"
            )
        x0 = self.x_m
        t0 = self.t_s
        dist = abs(target_m - x0)
        if self.recorder is not None:
            self.recorder.emit("move_start", t0, x0, 0.0,
                               self.battery.charge_j, self.odometer_m)
        if dist == 0.0:
            if self.recorder is not None:
                self.recorder.emit("move_end", t0, x0, 0.0,
                                   self.battery.charge_j, self.odometer_m)
            return True
        duration = dist / self.speed_mps
        clipped = duration > self.remaining_s() + _TIME_EPS
        actual = self.remaining_s() if clipped else duration
        v = self.speed_mps if target_m > x0 else -self.speed_mps
        if actual > _TIME_EPS:
            self._integrate(field, actual, v, self.budget.p_move_w)
        if clipped:
            x_end = x0 + v * actual
            self.t_s = self.end_time_s
        else:
            x_end = target_m
            self.t_s = t0 + duration
        self.odometer_m += abs(x_end - x0)
        self.x_m = x_end
        if self.recorder is not None:
            self.recorder.emit("move_end", self.t_s, self.x_m, 0.0,
                               self.battery.charge_j, self.odometer_m)
        return not clipped

    # -- measurement ---------------------------------------------------

    def measure_power(self, field, dwell_s: float) -> Measurement | None:
        """Dwell stationary (idle draw) and return the settled power reading.

        dwell_s below the settle time is a caller bug. Returns None if the
        scenario ends before the dwell completes (no reading is taken).
        """
        if dwell_s < self.settle_s - 1e-12:
            raise ContractViolation(
                f"measurement dwell {dwell_s} s below settle time {self.settle_s} s"
            )
        if self.remaining_s() < dwell_s - _TIME_EPS:
            rem = self.remaining_s()
            if rem > _TIME_EPS:
                self.advance(field, rem, MODE_IDLE)
            return None
        self.advance(field, dwell_s, MODE_IDLE)
        p = field.available_power(self.x_m, self.t_s)
        if self.recorder is not None:
            self.recorder.emit("measure", self.t_s, self.x_m, p,
                               self.battery.charge_j, self.odometer_m)
        return Measurement(power_w=p, x_m=self.x_m, t_s=self.t_s)

    # -- ledger --------------------------------------------------------

    @property
    def net_j(self) -> float:
        return self.battery.charge_j - self.charge_start_j
