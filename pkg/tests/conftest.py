"""Shared builders for the test suite."""

import random

import pytest

from sunwire import (
    Battery,
    Measurement,
    PowerField,
    RobotPlant,
    ShadowBand,
    StsParams,
    StsState,
    SunEnvelope,
    TraceRecorder,
    WireSpan,
    search_trial,
)

WIRE_LEN = 16.0
APEX_T = 43200.0


def all_day_envelope(peak_w=5.0, floor_w=0.0):
    """Envelope that is up for the whole standard day [0, 86400]."""
    return SunEnvelope(peak_power_w=peak_w, sunrise_s=0.0, sunset_s=86400.0,
                       diffuse_floor_w=floor_w)


def tent_field(peak_x, peak_w=5.0, floor_w=0.0, length=WIRE_LEN):
    """Frozen strictly-unimodal field: constant +-peak_w/length slope on
    each side of the apex, strictly positive at both wire ends.

    Constant slope magnitude keeps position error and power error
    proportional, so convergence tolerances in meters are meaningful.
    """
    left = ShadowBand(center0_m=(peak_x - length) - 20.0, width_m=40.0,
                      penumbra_m=length, opacity=1.0)
    right = ShadowBand(center0_m=(peak_x + length) + 20.0, width_m=40.0,
                       penumbra_m=length, opacity=1.0)
    base = PowerField(span=WireSpan(length),
                      envelope=all_day_envelope(peak_w, floor_w),
                      shadows=(left, right))
    return base.frozen(APEX_T)


def fresh_plant(start_x=8.0, recorder=None, capacity_j=1e7, end_time_s=None):
    kwargs = {} if end_time_s is None else {"end_time_s": end_time_s}
    return RobotPlant(x_m=start_x,
                      battery=Battery(capacity_j=capacity_j, charge_j=capacity_j),
                      recorder=recorder, **kwargs)


def run_one_trial(field, start_x=8.0, params=None, fine=False):
    """Drive a single search trial on a frozen field; returns
    (summary, state, plant, recorder)."""
    params = params or StsParams()
    rec = TraceRecorder()
    plant = fresh_plant(start_x=start_x, recorder=rec)
    state = StsState(x_best_m=start_x, ever_searched=fine)
    rec.bind(state)
    p0 = field.available_power(start_x, 0.0)
    seed = Measurement(power_w=p0, x_m=start_x, t_s=plant.t_s)
    summary = search_trial(state, plant, field, params, rec, seed)
    return summary, state, plant, rec


@pytest.fixture
def rng():
    return random.Random(20260810)
