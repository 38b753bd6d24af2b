import os
import subprocess
import sys

import numpy as np
import pytest

from layerlab import BACKEND_NAME, ConfigError
from layerlab import _stepper_py
from layerlab import stepper
from layerlab.pde import RadialGrid, operator_bands

try:
    from layerlab import _stepper

    HAVE_CYTHON = True
except ImportError:
    HAVE_CYTHON = False


def bands(m=64, n_dim=2, outer_bc="dirichlet"):
    grid = RadialGrid.with_spacing(n_dim, 6.4, 6.4 / m)
    return grid, operator_bands(grid, far_field=-1.0, outer_bc=outer_bc)


def initial(grid, rng):
    return np.clip(rng.normal(scale=0.4, size=grid.m), -1.0, 1.0)


def test_backend_name_is_valid():
    assert BACKEND_NAME in ("cython", "python")
    if HAVE_CYTHON:
        assert BACKEND_NAME == "cython"


@pytest.mark.skipif(not HAVE_CYTHON, reason="compiled stepper not built")
@pytest.mark.parametrize("scheme_id,scheme", [(0, "imex"), (1, "cn")])
def test_backends_agree(scheme_id, scheme, rng):
    grid, (lo, di, up, cv) = bands()
    u0 = initial(grid, rng)
    u_c = u0.copy()
    u_p = u0.copy()
    _stepper.run_steps(u_c, lo, di, up, cv, 1e-3, 200, 1.0, scheme_id)
    _stepper_py.run_steps(u_p, lo, di, up, cv, 1e-3, 200, 1.0, scheme_id)
    assert np.max(np.abs(u_c - u_p)) < 1e-12


def test_advance_leaves_input_untouched(rng):
    grid, (lo, di, up, cv) = bands()
    u0 = initial(grid, rng)
    kept = u0.copy()
    out = stepper.advance(u0, lo, di, up, cv, 1e-3, 5, 1.0, "imex")
    assert np.array_equal(u0, kept)
    assert not np.array_equal(out, u0)


def test_unknown_scheme_rejected(rng):
    grid, (lo, di, up, cv) = bands()
    with pytest.raises(ConfigError):
        stepper.advance(initial(grid, rng), lo, di, up, cv, 1e-3, 1, 1.0, "rk4")


def test_zero_reaction_is_linear(rng):
    # with the reaction off and no boundary forcing the update is a fixed
    # linear map, so superposition must hold to rounding
    grid, (lo, di, up, cv) = bands(outer_bc="neumann")
    assert np.all(cv == 0.0)
    u = initial(grid, rng)
    v = initial(grid, rng)
    args = (lo, di, up, cv, 1e-3, 20, 0.0)
    for scheme in ("imex", "cn"):
        au = stepper.advance(u, *args, scheme)
        av = stepper.advance(v, *args, scheme)
        both = stepper.advance(0.3 * u + 0.7 * v, *args, scheme)
        assert np.allclose(both, 0.3 * au + 0.7 * av, atol=1e-13)


def test_imex_step_matches_dense_solve(rng):
    # one IMEX step is (I - dt L) u1 = u0 + dt cv + dt f(u0)
    grid, (lo, di, up, cv) = bands(m=32)
    u0 = initial(grid, rng)
    dt = 1e-2
    m = grid.m
    L = np.diag(di) + np.diag(up[:-1], 1) + np.diag(lo[1:], -1)
    rhs = u0 + dt * cv + dt * (u0 - u0**3)
    ref = np.linalg.solve(np.eye(m) - dt * L, rhs)
    got = stepper.advance(u0, lo, di, up, cv, dt, 1, 1.0, "imex")
    assert np.allclose(got, ref, atol=1e-12)


def test_cn_step_matches_dense_solve(rng):
    # CN on the operator, Heun on the reaction
    grid, (lo, di, up, cv) = bands(m=32)
    u0 = initial(grid, rng)
    dt = 1e-2
    m = grid.m
    L = np.diag(di) + np.diag(up[:-1], 1) + np.diag(lo[1:], -1)
    f0 = u0 - u0**3
    ustar = u0 + dt * (L @ u0 + cv + f0)
    f1 = ustar - ustar**3
    rhs = u0 + 0.5 * dt * (L @ u0) + dt * cv + 0.5 * dt * (f0 + f1)
    ref = np.linalg.solve(np.eye(m) - 0.5 * dt * L, rhs)
    got = stepper.advance(u0, lo, di, up, cv, dt, 1, 1.0, "cn")
    assert np.allclose(got, ref, atol=1e-12)


def test_env_var_selects_python_backend():
    env = dict(os.environ, LAYERLAB_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c",
         "import layerlab; print(layerlab.BACKEND_NAME)"],
        env=env, capture_output=True, text=True, timeout=120,
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "python"


def test_env_var_rejects_unknown_backend():
    env = dict(os.environ, LAYERLAB_BACKEND="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import layerlab"],
        env=env, capture_output=True, text=True, timeout=120,
    )
    assert out.returncode != 0
    assert "LAYERLAB_BACKEND" in out.stderr
