"""Backend selection for the stepping kernel.

The compiled extension is preferred; the pure-Python module is the
fallback. LAYERLAB_BACKEND=python|cython overrides the choice (asking for
cython without the built extension is an error rather than a silent
downgrade, so benchmarks cannot lie).
"""

import os

import numpy as np

from .errors import ConfigError

_SCHEMES = {"imex": 0, "cn": 1}

_requested = os.environ.get("LAYERLAB_BACKEND", "").strip().lower()
if _requested not in ("", "cython", "python"):
    raise ConfigError(
        f"LAYERLAB_BACKEND must be 'cython' or 'python', got {_requested!r}"
    )

if _requested == "python":
    from . import _stepper_py as _impl

    BACKEND_NAME = "python"
else:
    try:
        from . import _stepper as _impl

        BACKEND_NAME = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import _stepper_py as _impl

        BACKEND_NAME = "python"


def advance(u, lo, di, up, cv, dt, nsteps, reaction_scale, scheme):
    """Return u advanced by nsteps steps of the selected scheme.

    The input array is not modified; bands and cv describe the fixed
    spatial operator (see pde.operator_bands).
    """
    if scheme not in _SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}")
    out = np.array(u, dtype=float, copy=True)
    _impl.run_steps(
        out,
        np.ascontiguousarray(lo, dtype=float),
        np.ascontiguousarray(di, dtype=float),
        np.ascontiguousarray(up, dtype=float),
        np.ascontiguousarray(cv, dtype=float),
        float(dt),
        int(nsteps),
        float(reaction_scale),
        _SCHEMES[scheme],
    )
    return out
