"""Kernel backend selection.

Prefers the compiled extension (``sunwire._core``) and falls back to the
pure-Python twin (``sunwire._ref``). Set ``SUNWIRE_PURE=1`` to force the
fallback. Both backends are arithmetic-identical by contract, so the choice
affects speed only, never results.
"""

import os

from . import _ref

if os.environ.get("SUNWIRE_PURE"):
    _impl = _ref
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _ref
        BACKEND = "python"

ENV_DIURNAL = _ref.ENV_DIURNAL
ENV_CONSTANT = _ref.ENV_CONSTANT

clear_sky = _impl.clear_sky
shade_factor = _impl.shade_factor
available_power = _impl.available_power
integrate = _impl.integrate
sweep_max = _impl.sweep_max


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return BACKEND
