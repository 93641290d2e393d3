# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: power-field evaluation, energy integration, grid sweep.

Twin of ``_ref.py``. PARITY CONSTRAINT: every floating-point operation here
must appear in the same order, with the same operands, as in ``_ref.py``;
the build disables FP contraction so both backends produce byte-identical
traces. Any edit to one file must be mirrored exactly in the other.
"""

from libc.math cimport fabs, floor, sin, M_PI
from libc.stdlib cimport free, malloc

ENV_DIURNAL = 0
ENV_CONSTANT = 1

cdef double _STEP_EPS = 1e-12


cdef double* _pack_shadows(object shadows, Py_ssize_t* n_out) except? NULL:
    cdef Py_ssize_t n = len(shadows)
    cdef double* sh = NULL
    cdef Py_ssize_t i, j
    n_out[0] = n
    if n == 0:
        return NULL
    sh = <double*> malloc(n * 5 * sizeof(double))
    if sh == NULL:
        raise MemoryError()
    for i in range(n):
        row = shadows[i]
        for j in range(5):
            sh[i * 5 + j] = row[j]
    return sh


cdef inline double _clear_sky(int mode, double a, double rise, double sset,
                              double t) noexcept nogil:
    if mode == 1:
        return a
    if t <= rise or t >= sset:
        return 0.0
    return a * sin(M_PI * ((t - rise) / (sset - rise)))


cdef inline double _shade(double* sh, Py_ssize_t n, double x, double t) noexcept nogil:
    cdef double f = 1.0
    cdef double c0, width, pen, drift, opacity, c, d, half, occ
    cdef Py_ssize_t i
    for i in range(n):
        c0 = sh[i * 5 + 0]
        width = sh[i * 5 + 1]
        pen = sh[i * 5 + 2]
        drift = sh[i * 5 + 3]
        opacity = sh[i * 5 + 4]
        c = c0 + drift * t
        d = fabs(x - c)
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


cdef inline double _power(int mode, double a, double rise, double sset,
                          double floor_w, double* sh, Py_ssize_t n,
                          double x, double t) noexcept nogil:
    cdef double p = _clear_sky(mode, a, rise, sset, t) * _shade(sh, n, x, t)
    if mode == 1:
        if floor_w > p:
            p = floor_w
    elif rise < t and t < sset:
        if floor_w > p:
            p = floor_w
    return p


def clear_sky(env, double t):
    """Unshaded panel power at time t, in watts."""
    cdef int mode = env[0]
    cdef double a = env[1]
    cdef double rise = env[2]
    cdef double sset = env[3]
    return _clear_sky(mode, a, rise, sset, t)


def shade_factor(shadows, double x, double t):
    """Product of per-band transmissions at (x, t); 1.0 when unshadowed."""
    cdef Py_ssize_t n = 0
    cdef double* sh = _pack_shadows(shadows, &n)
    try:
        return _shade(sh, n, x, t)
    finally:
        free(sh)


def available_power(env, shadows, double x, double t):
    """Panel power at (x, t); see the _ref.py twin for semantics."""
    cdef int mode = env[0]
    cdef double a = env[1]
    cdef double rise = env[2]
    cdef double sset = env[3]
    cdef double floor_w = env[4]
    cdef Py_ssize_t n = 0
    cdef double* sh = _pack_shadows(shadows, &n)
    try:
        return _power(mode, a, rise, sset, floor_w, sh, n, x, t)
    finally:
        free(sh)


def integrate(env, shadows, double x0, double v, double t0, double duration,
              double dt, double p_draw, double eta, double charge0,
              double capacity):
    """Advance the battery ledger across ``duration`` seconds.

    Same contract and arithmetic as ``_ref.integrate`` (Kahan-compensated
    accumulators, explicit-Euler sampling, shortened final step).
    """
    cdef int mode = env[0]
    cdef double a = env[1]
    cdef double rise = env[2]
    cdef double sset = env[3]
    cdef double floor_w = env[4]
    cdef Py_ssize_t nsh = 0
    cdef double* sh = _pack_shadows(shadows, &nsh)

    cdef double charge = charge0
    cdef double harvested = 0.0, h_c = 0.0
    cdef double consumed = 0.0, c_c = 0.0
    cdef double overflow = 0.0, o_c = 0.0
    cdef double deficit = 0.0, d_c = 0.0
    cdef long long n, k, steps
    cdef double rem, tau, h, x, p, gain, cost, y, s, pre, lost

    try:
        if duration <= 0.0:
            return charge, harvested, consumed, overflow, deficit
        n = <long long> floor(duration / dt + 1e-9)
        rem = duration - n * dt
        if rem <= _STEP_EPS:
            rem = 0.0
        steps = n + 1 if rem > 0.0 else n
        with nogil:
            for k in range(steps):
                tau = k * dt
                h = dt if k < n else rem
                x = x0 + v * tau
                p = _power(mode, a, rise, sset, floor_w, sh, nsh, x, t0 + tau)
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
    finally:
        free(sh)


def sweep_max(env, shadows, double length, double t, double delta):
    """Brute-force argmax over the grid {0, d, 2d, .., L}; lowest-x ties."""
    cdef int mode = env[0]
    cdef double a = env[1]
    cdef double rise = env[2]
    cdef double sset = env[3]
    cdef double floor_w = env[4]
    cdef Py_ssize_t nsh = 0
    cdef double* sh = _pack_shadows(shadows, &nsh)

    cdef long long n, k
    cdef double best_x = 0.0, best_p = -1.0, last_x = 0.0, x, p

    try:
        n = <long long> floor(length / delta + 1e-9)
        with nogil:
            for k in range(n + 1):
                x = k * delta
                if x > length:
                    x = length
                p = _power(mode, a, rise, sset, floor_w, sh, nsh, x, t)
                if p > best_p:
                    best_p = p
                    best_x = x
                last_x = x
            if last_x < length:
                p = _power(mode, a, rise, sset, floor_w, sh, nsh, length, t)
                if p > best_p:
                    best_p = p
                    best_x = length
        return best_x, best_p
    finally:
        free(sh)
