"""Photovoltaic power field along the wire.

Available power is a clear-sky diurnal envelope multiplied by tree-shadow
occlusion, floored by a small diffuse component while the sun is up. Shadow
bands are trapezoidal (flat opaque core, linear penumbra falloff) and drift
linearly in time to emulate sun motion. All objects here are immutable once
built and safe to evaluate from any number of readers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .errors import DomainError


@dataclass(frozen=True)
class WireSpan:
    """The wire the robot travels: positions x live in [0, length_m]."""

    length_m: float = 16.0

    def validate(self) -> list[tuple[str, str]]:
        if not self.length_m > 0:
            return [("length_m", "wire length must be > 0")]
        return []

    def contains(self, x_m: float) -> bool:
        return 0.0 <= x_m <= self.length_m


@dataclass(frozen=True)
class SunEnvelope:
    """Half-sine diurnal envelope plus the diffuse floor a fully shaded
    panel still produces in daylight.

    peak_power_w: panel output in full sun at the daily apex.
    sunrise_s / sunset_s: daylight bounds, seconds since scenario start.
    diffuse_floor_w: shaded-panel output while the sun is up.
    """

    peak_power_w: float = 5.0
    sunrise_s: float = 21600.0
    sunset_s: float = 64800.0
    diffuse_floor_w: float = 0.07

    def validate(self) -> list[tuple[str, str]]:
        bad = []
        if not self.peak_power_w > 0:
            bad.append(("peak_power_w", "peak power must be > 0"))
        if not 0 <= self.diffuse_floor_w < self.peak_power_w:
            bad.append(("diffuse_floor_w", "diffuse floor must satisfy 0 <= floor < peak"))
        if not self.sunrise_s < self.sunset_s:
            bad.append(("sunrise_s", "sunrise must precede sunset"))
        return bad

    def is_daylight(self, t_s: float) -> bool:
        return self.sunrise_s < t_s < self.sunset_s


@dataclass(frozen=True)
class ShadowBand:
    """One drifting trapezoidal occlusion band.

    Occlusion is 1 inside the core (|x - center(t)| <= width_m/2), falls
    linearly to 0 across penumbra_m on each side, and the center drifts as
    center0_m + drift_mps * t. opacity scales how much direct light the
    band blocks (1 = all of it).
    """

    center0_m: float
    width_m: float
    penumbra_m: float = 0.0
    drift_mps: float = 0.0
    opacity: float = 1.0

    def validate(self) -> list[tuple[str, str]]:
        bad = []
        if self.width_m < 0:
            bad.append(("width_m", "band width must be >= 0"))
        if self.penumbra_m < 0:
            bad.append(("penumbra_m", "penumbra width must be >= 0"))
        if not 0 <= self.opacity <= 1:
            bad.append(("opacity", "opacity must lie in [0, 1]"))
        return bad

    def center_at(self, t_s: float) -> float:
        return self.center0_m + self.drift_mps * t_s

    def packed(self) -> tuple[float, float, float, float, float]:
        return (
            float(self.center0_m),
            float(self.width_m),
            float(self.penumbra_m),
            float(self.drift_mps),
            float(self.opacity),
        )


@dataclass(frozen=True)
class PowerField:
    """Available PV power P(x, t) along the wire."""

    span: WireSpan = field(default_factory=WireSpan)
    envelope: SunEnvelope = field(default_factory=SunEnvelope)
    shadows: tuple[ShadowBand, ...] = ()

    def __post_init__(self):
        if isinstance(self.shadows, list):
            object.__setattr__(self, "shadows", tuple(self.shadows))

    @property
    def length_m(self) -> float:
        return self.span.length_m

    def _env(self) -> tuple:
        e = self.envelope
        return (
            kernels.ENV_DIURNAL,
            float(e.peak_power_w),
            float(e.sunrise_s),
            float(e.sunset_s),
            float(e.diffuse_floor_w),
        )

    def _packed_shadows(self) -> tuple:
        return tuple(b.packed() for b in self.shadows)

    def clear_sky(self, t_s: float) -> float:
        """Unshaded panel power at time t; 0 outside daylight."""
        if t_s < 0:
            raise DomainError(f"time must be >= 0, got {t_s}")
        return kernels.clear_sky(self._env(), float(t_s))

    def shade_factor(self, x_m: float, t_s: float) -> float:
        """Fraction of direct light reaching position x at time t."""
        self._check_x(x_m)
        return kernels.shade_factor(self._packed_shadows(), float(x_m), float(t_s))

    def available_power(self, x_m: float, t_s: float) -> float:
        """Panel power at (x, t) in watts, diffuse floor included."""
        self._check_x(x_m)
        if t_s < 0:
            raise DomainError(f"time must be >= 0, got {t_s}")
        return kernels.available_power(
            self._env(), self._packed_shadows(), float(x_m), float(t_s)
        )

    def frozen(self, t_s: float) -> "FrozenField":
        """A time-invariant snapshot of this field at instant t."""
        return FrozenField.from_field(self, t_s)

    def _check_x(self, x_m: float) -> None:
        if not self.span.contains(x_m):
            raise DomainError(
                f"position {x_m} outside wire [0, {self.span.length_m}]"
            )


@dataclass(frozen=True)
class FrozenField:
    """A PowerField snapshot: P(x, t) == P(x, t0) for every t.

    Drifting band centers are baked in at t0 and the envelope is replaced by
    its constant value at t0, so the snapshot evaluates through the same
    kernels as a live field.
    """

    span: WireSpan
    direct_w: float
    floor_w: float
    shadows: tuple[ShadowBand, ...]
    frozen_t_s: float

    @classmethod
    def from_field(cls, base: PowerField, t_s: float) -> "FrozenField":
        frozen_bands = tuple(
            ShadowBand(
                center0_m=b.center_at(t_s),
                width_m=b.width_m,
                penumbra_m=b.penumbra_m,
                drift_mps=0.0,
                opacity=b.opacity,
            )
            for b in base.shadows
        )
        direct = base.clear_sky(t_s)
        floor = base.envelope.diffuse_floor_w if base.envelope.is_daylight(t_s) else 0.0
        return cls(
            span=base.span,
            direct_w=direct,
            floor_w=floor,
            shadows=frozen_bands,
            frozen_t_s=float(t_s),
        )

    @property
    def length_m(self) -> float:
        return self.span.length_m

    def _env(self) -> tuple:
        return (kernels.ENV_CONSTANT, float(self.direct_w), 0.0, 0.0, float(self.floor_w))

    def _packed_shadows(self) -> tuple:
        return tuple(b.packed() for b in self.shadows)

    def clear_sky(self, t_s: float) -> float:
        return kernels.clear_sky(self._env(), float(t_s))

    def shade_factor(self, x_m: float, t_s: float) -> float:
        self._check_x(x_m)
        return kernels.shade_factor(self._packed_shadows(), float(x_m), float(t_s))

    def available_power(self, x_m: float, t_s: float) -> float:
        self._check_x(x_m)
        return kernels.available_power(
            self._env(), self._packed_shadows(), float(x_m), float(t_s)
        )

    def _check_x(self, x_m: float) -> None:
        if not self.span.contains(x_m):
            raise DomainError(
                f"position {x_m} outside wire [0, {self.span.length_m}]"
            )
