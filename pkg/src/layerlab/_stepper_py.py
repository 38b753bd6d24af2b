"""Pure-Python fallback for the stepping kernel.

Same contract as the compiled _stepper module: advance u in place by
nsteps IMEX (scheme 0) or CN+Heun (scheme 1) steps. The implicit solve
uses a prefactored banded matrix via scipy.
"""

import numpy as np
from scipy.linalg import solve_banded


def run_steps(u, lo, di, up, cv, dt, nsteps, reaction_scale, scheme):
    u = np.asarray(u)
    lo = np.asarray(lo)
    di = np.asarray(di)
    up = np.asarray(up)
    cv = np.asarray(cv)
    m = u.shape[0]
    theta = 1.0 if scheme == 0 else 0.5
    rs = reaction_scale

    ab = np.zeros((3, m))
    ab[0, 1:] = -theta * dt * up[:-1]
    ab[1, :] = 1.0 - theta * dt * di
    ab[2, :-1] = -theta * dt * lo[1:]

    def lu_plus_c(v):
        out = di * v + cv
        out[:-1] += up[:-1] * v[1:]
        out[1:] += lo[1:] * v[:-1]
        return out

    for _ in range(nsteps):
        if scheme == 0:
            rhs = u + dt * cv + dt * rs * (u - u**3)
        else:
            expl = lu_plus_c(u)
            f0 = rs * (u - u**3)
            ustar = u + dt * (expl + f0)
            f1 = rs * (ustar - ustar**3)
            rhs = u + 0.5 * dt * (expl - cv) + dt * cv + 0.5 * dt * (f0 + f1)
        u[:] = solve_banded((1, 1), ab, rhs, check_finite=False)
