"""Embedded Dormand-Prince 4(5) integrator with PI step control.

Written for the long-horizon layer ODEs: supports integration in either
time direction, a hard cap on the step size (the dense output below is a
cubic Hermite, so accuracy-critical callers bound the step), and an
accept-step callback that can veto continuation (used for ordering and
collision monitoring).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, StepFailure

# Butcher tableau (FSAL: the 7th stage equals the next step's first).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_ERR = _B5 - _B4


@dataclass
class OdeSolution:
    """Accepted steps of one integration plus cubic Hermite dense output.

    ts is monotone in the integration direction; ys holds states row-wise
    and fs the right-hand side at each node (so the Hermite interpolant
    matches value and slope at every accepted point).
    """

    ts: np.ndarray
    ys: np.ndarray
    fs: np.ndarray
    direction: float
    status: str = "finished"
    # ascending copies for interpolation lookup
    _ts_asc: np.ndarray = field(init=False, repr=False)
    _ys_asc: np.ndarray = field(init=False, repr=False)
    _fs_asc: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.direction < 0:
            self._ts_asc = self.ts[::-1]
            self._ys_asc = self.ys[::-1]
            self._fs_asc = self.fs[::-1]
        else:
            self._ts_asc = self.ts
            self._ys_asc = self.ys
            self._fs_asc = self.fs

    @property
    def t_min(self):
        return float(self._ts_asc[0])

    @property
    def t_max(self):
        return float(self._ts_asc[-1])

    def _locate(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t_min - 1e-12) or np.any(t > self.t_max + 1e-12):
            raise DomainError(
                f"evaluation time outside [{self.t_min}, {self.t_max}]"
            )
        idx = np.searchsorted(self._ts_asc, t, side="right") - 1
        idx = np.clip(idx, 0, len(self._ts_asc) - 2)
        t0 = self._ts_asc[idx]
        t1 = self._ts_asc[idx + 1]
        h = t1 - t0
        s = (t - t0) / h
        return idx, h, s

    def __call__(self, t):
        """Cubic Hermite interpolation of the state at time(s) t."""
        scalar = np.isscalar(t) or np.ndim(t) == 0
        idx, h, s = self._locate(t)
        y0 = self._ys_asc[idx]
        y1 = self._ys_asc[idx + 1]
        f0 = self._fs_asc[idx]
        f1 = self._fs_asc[idx + 1]
        s = np.atleast_1d(s)[..., None]
        h = np.atleast_1d(h)[..., None]
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        out = h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1
        return out[0] if scalar else out

    def derivative(self, t):
        """Time derivative of the Hermite interpolant at t.

        Deliberately not the ODE right-hand side: residual checks feed on
        the interpolant so they stay independent of the equation.
        """
        scalar = np.isscalar(t) or np.ndim(t) == 0
        idx, h, s = self._locate(t)
        y0 = self._ys_asc[idx]
        y1 = self._ys_asc[idx + 1]
        f0 = self._fs_asc[idx]
        f1 = self._fs_asc[idx + 1]
        s = np.atleast_1d(s)[..., None]
        h = np.atleast_1d(h)[..., None]
        d00 = (6 * s**2 - 6 * s) / h
        d10 = 3 * s**2 - 4 * s + 1
        d01 = (-6 * s**2 + 6 * s) / h
        d11 = 3 * s**2 - 2 * s
        out = d00 * y0 + d10 * f0 + d01 * y1 + d11 * f1
        return out[0] if scalar else out


def _error_norm(err, y0, y1, rel_tol, abs_tol):
    scale = abs_tol + rel_tol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def solve_ode(
    rhs,
    t_span,
    y0,
    rel_tol=1e-8,
    abs_tol=1e-10,
    max_step=np.inf,
    first_step=None,
    max_steps=1_000_000,
    accept_callback=None,
):
    """Integrate y' = rhs(t, y) over t_span with adaptive 4(5) stepping.

    Parameters
    ----------
    rhs : callable (t, y) -> ndarray
    t_span : (t0, t1) with t1 != t0; t1 < t0 integrates backward.
    rel_tol, abs_tol : mixed error control per component (RMS norm).
    max_step : cap on |step|; also bounds the dense-output error.
    accept_callback : optional callable (t, y) -> bool | None run after
        every accepted step. Returning False stops the integration and
        marks the solution status "terminated".

    Returns
    -------
    OdeSolution

    Raises
    ------
    StepFailure
        If the controller underflows the step size or exceeds max_steps.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if t0 == t1:
        raise DomainError("empty integration interval")
    if not (rel_tol > 0 and abs_tol > 0):
        raise DomainError("tolerances must be positive")
    direction = 1.0 if t1 > t0 else -1.0
    span = abs(t1 - t0)

    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    t = t0
    f = np.asarray(rhs(t, y), dtype=float)

    if first_step is None:
        # conservative guess; the controller recovers quickly
        h = min(span / 100.0, max_step, 1.0)
    else:
        h = min(abs(first_step), max_step)

    ts = [t]
    ys = [y.copy()]
    fs = [f.copy()]
    status = "finished"

    err_prev = 1.0
    k = np.empty((7, y.size))
    nsteps = 0
    eps = np.finfo(float).eps
    dust = 16 * eps * max(1.0, abs(t0), abs(t1))
    while (t1 - t) * direction > dust:
        if nsteps >= max_steps:
            raise StepFailure(f"exceeded {max_steps} steps at t={t}", t=t)
        h = min(h, max_step, abs(t1 - t))
        if h < 16 * eps * max(1.0, abs(t)):
            raise StepFailure(f"step size underflow at t={t}", t=t)

        dt = direction * h
        k[0] = f
        rejected_to_nan = False
        for i in range(1, 7):
            yi = y + dt * (k[:i].T @ _A[i])
            k[i] = rhs(t + _C[i] * dt, yi)
            if not np.all(np.isfinite(k[i])):
                rejected_to_nan = True
                break
        if rejected_to_nan:
            h *= 0.25
            nsteps += 1
            continue

        y_new = y + dt * (k.T @ _B5)
        err_vec = dt * (k.T @ _ERR)
        err = _error_norm(err_vec, y, y_new, rel_tol, abs_tol)

        if err <= 1.0 and np.all(np.isfinite(y_new)):
            t_new = t + dt
            f_new = k[6]  # FSAL stage is rhs(t_new, y_new)
            ts.append(t_new)
            ys.append(y_new.copy())
            fs.append(f_new.copy())
            stop = False
            if accept_callback is not None:
                verdict = accept_callback(t_new, y_new)
                # None means "no opinion"; any falsy verdict (including a
                # numpy bool) stops the run
                if verdict is not None and not verdict:
                    status = "terminated"
                    stop = True
            # PI controller (Hairer-style exponents for a 5th order pair)
            grow = 0.9 * max(err, 1e-10) ** -0.14 * err_prev**0.08
            h *= min(5.0, max(0.2, grow))
            err_prev = max(err, 1e-10)
            t, y, f = t_new, y_new, f_new
            if stop:
                break
        else:
            err = max(err, 1e-10) if np.isfinite(err) else 100.0
            h *= min(1.0, max(0.1, 0.9 * err**-0.2))
        nsteps += 1

    ts = np.array(ts)
    if status == "finished" and len(ts) > 1:
        ts[-1] = t1  # absorb floating-point dust from the last landing
    return OdeSolution(
        ts=ts,
        ys=np.array(ys),
        fs=np.array(fs),
        direction=direction,
        status=status,
    )
