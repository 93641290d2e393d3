"""Pure-Python kernels: power-field evaluation, energy integration, grid sweep.

These are the hot inner loops of the simulator. A compiled twin lives in
``_core.pyx``; either backend may be active (see ``kernels``).

PARITY CONSTRAINT: every floating-point operation here must appear in the
same order, with the same operands, as in ``_core.pyx``. Traces are required
to be byte-identical regardless of which backend ran, so any edit to one
file must be mirrored exactly in the other.

Shadow bands are packed as tuples ``(center0_m, width_m, penumbra_m,
drift_mps, opacity)``. The envelope is packed as ``(mode, a, sunrise_s,
sunset_s, floor_w)`` where mode 0 is the diurnal half-sine (``a`` = peak
power) and mode 1 is a time-frozen field (``a`` = constant direct power,
``floor_w`` already gated by whether the frozen instant was daylight).
"""

import math

ENV_DIURNAL = 0
ENV_CONSTANT = 1

# Sub-second leftovers below this are rounding debris, not a partial step.
_STEP_EPS = 1e-12


def clear_sky(env, t):
    """Unshaded panel power at time t, in watts."""
    mode, a, rise, sset, _floor = env
    if mode == ENV_CONSTANT:
        return a
    if t <= rise or t >= sset:
        return 0.0
    return a * math.sin(math.pi * ((t - rise) / (sset - rise)))


def shade_factor(shadows, x, t):
    """Product of per-band transmissions at (x, t); 1.0 when unshadowed."""
    f = 1.0
    for (c0, width, pen, drift, opacity) in shadows:
        c = c0 + drift * t
        d = abs(x - c)
        half = 0.5 * width
        if d <= half:
            occ = 1.0
        elif d < half + pen:
            occ = (half + pen - d) / pen
        else:
            occ = 0.0
        if occ > 0.0:
            f = f * (1.0 - opacity * occ)
    return f


def available_power(env, shadows, x, t):
    """Panel power at (x, t): direct power under shade, floored by the
    diffuse component while the sun is up, 0 at night."""
    mode, a, rise, sset, floor = env
    p = clear_sky(env, t) * shade_factor(shadows, x, t)
    if mode == ENV_CONSTANT:
        if floor > p:
            p = floor
    elif rise < t < sset:
        if floor > p:
            p = floor
    return p


def integrate(env, shadows, x0, v, t0, duration, dt, p_draw, eta, charge0, capacity):
    """Advance the battery ledger across ``duration`` seconds.

    Position moves linearly from x0 at signed speed v (0 when stationary);
    power is sampled at the start of each step (explicit Euler) with a
    shortened final step. Returns
    ``(charge, harvested_j, consumed_j, overflow_j, deficit_j)`` where the
    last two are energy lost to clamping at a full/empty battery.

    Accumulators use compensated (Kahan) summation so the ledger identity
    charge1 - charge0 == harvested - consumed - overflow + deficit
    holds to well under 1e-6 J even over multi-day integrations.
    """
    charge = charge0
    harvested = 0.0
    h_c = 0.0
    consumed = 0.0
    c_c = 0.0
    overflow = 0.0
    o_c = 0.0
    deficit = 0.0
    d_c = 0.0
    if duration <= 0.0:
        return charge, harvested, consumed, overflow, deficit
    n = int(math.floor(duration / dt + 1e-9))
    rem = duration - n * dt
    if rem <= _STEP_EPS:
        rem = 0.0
    steps = n + 1 if rem > 0.0 else n
    for k in range(steps):
        tau = k * dt
        h = dt if k < n else rem
        x = x0 + v * tau
        p = available_power(env, shadows, x, t0 + tau)
        gain = h * (eta * p)
        cost = h * p_draw

        y = gain - h_c
        s = harvested + y
        h_c = (s - harvested) - y
        harvested = s

        y = cost - c_c
        s = consumed + y
        c_c = (s - consumed) - y
        consumed = s

        pre = charge + (gain - cost)
        if pre > capacity:
            lost = pre - capacity
            y = lost - o_c
            s = overflow + y
            o_c = (s - overflow) - y
            overflow = s
            charge = capacity
        elif pre < 0.0:
            lost = 0.0 - pre
            y = lost - d_c
            s = deficit + y
            d_c = (s - deficit) - y
            deficit = s
            charge = 0.0
        else:
            charge = pre
    return charge, harvested, consumed, overflow, deficit


def sweep_max(env, shadows, length, t, delta):
    """Brute-force argmax of available_power over the grid {0, d, 2d, .., L}.

    Ties break to the lowest x. Returns (x_star, p_star).
    """
    n = int(math.floor(length / delta + 1e-9))
    best_x = 0.0
    best_p = -1.0
    last_x = 0.0
    for k in range(n + 1):
        x = k * delta
        if x > length:
            x = length
        p = available_power(env, shadows, x, t)
        if p > best_p:
            best_p = p
            best_x = x
        last_x = x
    if last_x < length:
        p = available_power(env, shadows, length, t)
        if p > best_p:
            best_p = p
            best_x = length
    return best_x, best_p
