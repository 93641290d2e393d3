"""Scenario files: a flat, diff-friendly key-value format.

One `key = value` pair per line, `#` comment lines, dotted section prefixes
(`sts.zeta`, `shadow.1.width_m`). Every key is optional except `name` and
`duration_s`; unspecified keys take the module defaults. Unknown keys are
an error, as is any violated invariant (the error names the key).

Example::

    name = demo-day
    duration_s = 86400
    strategy = sts
    span.length_m = 16
    shadow.1.center0_m = 3.0
    shadow.1.width_m = 2.0
    shadow.1.drift_mps = 0.0002
    sts.zeta = 0.7
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field

from .errors import ScenarioError
from .field import PowerField, ShadowBand, SunEnvelope, WireSpan
from .plant import Battery, PowerBudget, RobotPlant
from .sts import StsParams

STRATEGIES = ("sts", "fixed", "full_sweep")

_SHADOW_KEY = re.compile(r"^shadow\.(\d+)\.(center0_m|width_m|penumbra_m|drift_mps|opacity)$")


@dataclass
class Scenario:
    """Complete declarative description of one experiment."""

    name: str
    duration_s: float
    seed: int = 0
    strategy: str = "sts"
    start_x_m: float | None = None
    dt_s: float = 1.0
    speed_mps: float = 1.0 / 60.0
    span: WireSpan = dc_field(default_factory=WireSpan)
    envelope: SunEnvelope = dc_field(default_factory=SunEnvelope)
    shadows: tuple[ShadowBand, ...] = ()
    battery: Battery = dc_field(default_factory=Battery)
    budget: PowerBudget = dc_field(default_factory=PowerBudget)
    params: StsParams = dc_field(default_factory=StsParams)

    def __post_init__(self):
        if self.start_x_m is None:
            self.start_x_m = self.span.length_m / 2.0

    def validate(self) -> None:
        """Raise ScenarioError naming the first violated invariant."""
        problems: list[tuple[str, str]] = []
        if not self.duration_s > 0:
            problems.append(("duration_s", "duration must be > 0"))
        if self.seed < 0:
            problems.append(("seed", "seed must be >= 0"))
        if self.strategy not in STRATEGIES:
            problems.append(("strategy", f"strategy must be one of {STRATEGIES}"))
        if not self.dt_s > 0:
            problems.append(("sim.dt_s", "integrator step must be > 0"))
        if not self.speed_mps > 0:
            problems.append(("plant.speed_mps", "travel speed must be > 0"))
        problems += [("span." + k, m) for k, m in self.span.validate()]
        problems += [("envelope." + k, m) for k, m in self.envelope.validate()]
        for i, band in enumerate(self.shadows, start=1):
            problems += [(f"shadow.{i}." + k, m) for k, m in band.validate()]
        problems += [("battery." + k, m) for k, m in self.battery.validate()]
        problems += [("plant." + k, m) for k, m in self.budget.validate()]
        problems += [("sts." + k, m) for k, m in self.params.validate()]
        if not 0 <= self.start_x_m <= self.span.length_m:
            problems.append(
                ("start_x_m", f"start position must lie on the wire [0, {self.span.length_m}]")
            )
        if problems:
            key, msg = problems[0]
            raise ScenarioError(msg, key=key)

    def build_field(self) -> PowerField:
        return PowerField(span=self.span, envelope=self.envelope, shadows=self.shadows)

    def build_plant(self, recorder=None) -> RobotPlant:
        return RobotPlant(
            x_m=self.start_x_m,
            speed_mps=self.speed_mps,
            battery=Battery(
                capacity_j=self.battery.capacity_j,
                charge_j=self.battery.charge_j,
                v_full=self.battery.v_full,
                v_empty=self.battery.v_empty,
            ),
            budget=self.budget,
            dt_s=self.dt_s,
            settle_s=self.params.t_p_s,
            end_time_s=self.duration_s,
            recorder=recorder,
        )


def _parse_float(raw: str, key: str, line: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ScenarioError(f"expected a number, got {raw!r}", key=key, line=line)
    if math.isnan(value) or math.isinf(value):
        raise ScenarioError(f"expected a finite number, got {raw!r}", key=key, line=line)
    return value


def _parse_int(raw: str, key: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"expected an integer, got {raw!r}", key=key, line=line)


def _parse_bool(raw: str, key: str, line: int) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ScenarioError(f"expected true/false, got {raw!r}", key=key, line=line)


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    """Parse and fully validate scenario text."""
    pairs: dict[str, tuple[str, int]] = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ScenarioError(f"expected 'key = value', got {line!r}", line=lineno)
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if not key:
            raise ScenarioError("empty key", line=lineno)
        if key in pairs:
            raise ScenarioError("duplicate key", key=key, line=lineno)
        pairs[key] = (raw, lineno)

    def take(key):
        return pairs.pop(key, None)

    def take_float(key, default):
        item = take(key)
        return default if item is None else _parse_float(item[0], key, item[1])

    def take_int(key, default):
        item = take(key)
        return default if item is None else _parse_int(item[0], key, item[1])

    def take_bool(key, default):
        item = take(key)
        return default if item is None else _parse_bool(item[0], key, item[1])

    name_item = take("name")
    if name_item is None:
        raise ScenarioError("scenario must set a name", key="name")
    duration_item = take("duration_s")
    if duration_item is None:
        raise ScenarioError("scenario must set a duration", key="duration_s")
    duration_s = _parse_float(duration_item[0], "duration_s", duration_item[1])

    strategy_item = take("strategy")
    strategy = strategy_item[0] if strategy_item is not None else "sts"

    span = WireSpan(length_m=take_float("span.length_m", WireSpan.length_m))
    envelope = SunEnvelope(
        peak_power_w=take_float("envelope.peak_power_w", SunEnvelope.peak_power_w),
        sunrise_s=take_float("envelope.sunrise_s", SunEnvelope.sunrise_s),
        sunset_s=take_float("envelope.sunset_s", SunEnvelope.sunset_s),
        diffuse_floor_w=take_float("envelope.diffuse_floor_w", SunEnvelope.diffuse_floor_w),
    )

    # Shadow bands: indices must run 1..N with no gaps.
    shadow_fields: dict[int, dict[str, float]] = {}
    for key in [k for k in pairs if k.startswith("shadow.")]:
        match = _SHADOW_KEY.match(key)
        if match is None:
            raise ScenarioError("unknown key", key=key, line=pairs[key][1])
        idx = int(match.group(1))
        raw, lineno = pairs.pop(key)
        shadow_fields.setdefault(idx, {})[match.group(2)] = _parse_float(raw, key, lineno)
    bands = []
    if shadow_fields:
        expected = set(range(1, max(shadow_fields) + 1))
        missing = expected - set(shadow_fields)
        if missing:
            raise ScenarioError(
                f"shadow indices must be contiguous from 1; missing {sorted(missing)}",
                key=f"shadow.{min(missing)}",
            )
        for idx in sorted(shadow_fields):
            fields = shadow_fields[idx]
            if "center0_m" not in fields:
                raise ScenarioError("shadow band needs center0_m", key=f"shadow.{idx}.center0_m")
            if "width_m" not in fields:
                raise ScenarioError("shadow band needs width_m", key=f"shadow.{idx}.width_m")
            bands.append(
                ShadowBand(
                    center0_m=fields["center0_m"],
                    width_m=fields["width_m"],
                    penumbra_m=fields.get("penumbra_m", 0.0),
                    drift_mps=fields.get("drift_mps", 0.0),
                    opacity=fields.get("opacity", 1.0),
                )
            )

    capacity_j = take_float("battery.capacity_j", Battery.capacity_j)
    battery = Battery(
        capacity_j=capacity_j,
        charge_j=take_float("battery.charge0_j", capacity_j / 2.0),
        v_full=take_float("battery.v_full", Battery.v_full),
        v_empty=take_float("battery.v_empty", Battery.v_empty),
    )
    budget = PowerBudget(
        p_move_w=take_float("plant.p_move_w", PowerBudget.p_move_w),
        p_idle_w=take_float("plant.p_idle_w", PowerBudget.p_idle_w),
        p_sleep_w=take_float("plant.p_sleep_w", PowerBudget.p_sleep_w),
        eta_conv=take_float("plant.eta_conv", PowerBudget.eta_conv),
    )
    params = StsParams(
        wake_threshold_w=take_float("sts.wake_threshold_w", StsParams.wake_threshold_w),
        retrigger_frac=take_float("sts.retrigger_frac", StsParams.retrigger_frac),
        dx_coarse_m=take_float("sts.dx_coarse_m", StsParams.dx_coarse_m),
        dx_fine_m=take_float("sts.dx_fine_m", StsParams.dx_fine_m),
        inertia0=take_float("sts.inertia0", StsParams.inertia0),
        zeta=take_float("sts.zeta", StsParams.zeta),
        min_step_m=take_float("sts.min_step_m", StsParams.min_step_m),
        max_iters=take_int("sts.max_iters", StsParams.max_iters),
        t_p_s=take_float("sts.t_p_s", StsParams.t_p_s),
        monitor_period_s=take_float("sts.monitor_period_s", StsParams.monitor_period_s),
        sleep_recheck_s=take_float("sts.sleep_recheck_s", StsParams.sleep_recheck_s),
        reset_g_best_on_wake=take_bool(
            "sts.reset_g_best_on_wake", StsParams.reset_g_best_on_wake
        ),
    )

    scenario = Scenario(
        name=name_item[0],
        duration_s=duration_s,
        seed=take_int("seed", 0),
        strategy=strategy,
        start_x_m=take_float("start_x_m", None),
        dt_s=take_float("sim.dt_s", 1.0),
        speed_mps=take_float("plant.speed_mps", 1.0 / 60.0),
        span=span,
        envelope=envelope,
        shadows=tuple(bands),
        battery=battery,
        budget=budget,
        params=params,
    )

    if pairs:
        key = min(pairs, key=lambda k: pairs[k][1])
        raise ScenarioError("unknown key", key=key, line=pairs[key][1])

    scenario.validate()
    return scenario


def load_scenario(path) -> Scenario:
    """Load and validate a scenario file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}")
    return parse_scenario(text, source=str(path))
