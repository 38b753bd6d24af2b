# cython: boundscheck=False, wraparound=False, cdivision=True
"""Hot stepping kernel: repeated IMEX / CN-Heun steps of

    u_t = L u + c + reaction_scale * (u - u^3)

where L is a fixed tridiagonal operator (bands lo/di/up, constant c from
the boundary ghost). The implicit matrix I - theta*dt*L is prefactored
once (Thomas), so each step is one O(m) sweep plus the explicit algebra.

The pure-Python module _stepper_py implements the identical contract; the
backends must agree to rounding (covered by a cross-backend test).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def run_steps(
    double[::1] u,
    double[::1] lo,
    double[::1] di,
    double[::1] up,
    double[::1] cv,
    double dt,
    int nsteps,
    double reaction_scale,
    int scheme,
):
    """Advance u in place by nsteps steps. scheme: 0 = IMEX, 1 = CN+Heun."""
    cdef Py_ssize_t m = u.shape[0]
    cdef double theta = 1.0 if scheme == 0 else 0.5
    cdef Py_ssize_t i, step
    cdef double rs = reaction_scale
    cdef double f0, f1, us

    work = np.empty((5, m), dtype=np.float64)
    cdef double[:, ::1] w = work
    # w rows: 0 = sub-band of M, 1 = Thomas denominators, 2 = modified
    # upper band, 3 = rhs/solution sweep, 4 = explicit Lu + c
    for i in range(m):
        w[0, i] = -theta * dt * lo[i]
    cdef double md
    md = 1.0 - theta * dt * di[0]
    w[1, 0] = md
    w[2, 0] = (-theta * dt * up[0]) / md
    for i in range(1, m):
        md = 1.0 - theta * dt * di[i]
        w[1, i] = md - w[0, i] * w[2, i - 1]
        w[2, i] = (-theta * dt * up[i]) / w[1, i]

    for step in range(nsteps):
        if scheme == 0:
            for i in range(m):
                w[3, i] = u[i] + dt * cv[i] + dt * rs * (u[i] - u[i] * u[i] * u[i])
        else:
            # explicit Lu + c, reused by predictor and corrector
            w[4, 0] = di[0] * u[0] + up[0] * u[1] + cv[0]
            for i in range(1, m - 1):
                w[4, i] = lo[i] * u[i - 1] + di[i] * u[i] + up[i] * u[i + 1] + cv[i]
            w[4, m - 1] = lo[m - 1] * u[m - 2] + di[m - 1] * u[m - 1] + cv[m - 1]
            for i in range(m):
                f0 = rs * (u[i] - u[i] * u[i] * u[i])
                us = u[i] + dt * (w[4, i] + f0)
                f1 = rs * (us - us * us * us)
                w[3, i] = u[i] + 0.5 * dt * (w[4, i] - cv[i]) + dt * cv[i] \
                    + 0.5 * dt * (f0 + f1)

        # Thomas solve: forward sweep then back substitution
        w[3, 0] = w[3, 0] / w[1, 0]
        for i in range(1, m):
            w[3, i] = (w[3, i] - w[0, i] * w[3, i - 1]) / w[1, i]
        u[m - 1] = w[3, m - 1]
        for i in range(m - 2, -1, -1):
            u[i] = w[3, i] - w[2, i] * u[i + 1]
