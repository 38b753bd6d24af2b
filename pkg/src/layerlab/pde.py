"""Finite-volume solver for the radial reaction-diffusion equation

    u_t = r^{1-n} (r^{n-1} u_r)_r + reaction_scale * f(u)

on a cell-centered grid.

Grid layout (m cells, spacing h = r_max / m):

        face 0   face 1   face 2                face m
          |--------|--------|-- ... --|-----------|
          0   x    h   x   2h         (m-1)h  x  r_max
            node 0    node 1             node m-1

    node i = (i + 1/2) h, so no node sits on the r = 0 singularity.

The flux through face 0 is identically zero (radial symmetry), so the
origin needs no special-casing. The outer boundary is Dirichlet via a
reflected ghost cell (value 2 u_D - u_{m-1}) or zero-flux Neumann.

n_dim = 1 is the degenerate flat mode: all face weights r^{n-1} become 1
and the curvature term drops out, which is what the stationary-profile
checks need.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridMismatch
from . import stepper
from .analysis import extract_interfaces_with_signs

_OVERSHOOT = 0.05  # allowed excursion beyond [-1, 1]


@dataclass(frozen=True)
class RadialGrid:
    n_dim: int
    r_max: float
    m: int

    def __post_init__(self):
        if int(self.n_dim) != self.n_dim or self.n_dim < 1:
            raise DomainError(
                f"dimension must be an integer >= 1, got {self.n_dim}"
            )
        if not self.r_max > 0:
            raise DomainError(f"r_max must be positive, got {self.r_max}")
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"need at least 2 cells, got {self.m}")

    @classmethod
    def with_spacing(cls, n_dim, r_max, h):
        """Grid with cell size exactly h; r_max rounds to a multiple."""
        if not h > 0:
            raise DomainError(f"spacing must be positive, got {h}")
        m = max(2, int(round(r_max / h)))
        return cls(n_dim=n_dim, r_max=m * h, m=m)

    @property
    def h(self):
        return self.r_max / self.m

    @property
    def nodes(self):
        return (np.arange(self.m) + 0.5) * self.h

    @property
    def faces(self):
        return np.arange(self.m + 1) * self.h


@dataclass(frozen=True)
class RadialField:
    grid: RadialGrid
    values: np.ndarray
    t: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.m,):
            raise DomainError(
                f"field has {values.shape} values for {self.grid.m} cells"
            )
        if np.max(np.abs(values)) > 1.0 + _OVERSHOOT + 1e-12:
            raise DomainError(
                "field left the invariant interval "
                f"[-{1 + _OVERSHOOT}, {1 + _OVERSHOOT}]"
            )

    def with_values(self, values, t):
        return RadialField(grid=self.grid, values=values, t=t)


@dataclass(frozen=True)
class SolverConfig:
    dt: float = 1e-3
    scheme: str = "imex"  # "imex" (first order) or "cn" (second order)
    far_field: float = -1.0
    outer_bc: str = "dirichlet"  # or "neumann"
    reaction_scale: float = 1.0

    def __post_init__(self):
        if not 0 < self.dt <= 0.25:
            raise DomainError(
                f"dt must be in (0, 0.25] for explicit reaction stability, "
                f"got {self.dt}"
            )
        if self.scheme not in ("imex", "cn"):
            raise DomainError(f"unknown scheme {self.scheme!r}")
        if self.outer_bc not in ("dirichlet", "neumann"):
            raise DomainError(f"unknown outer_bc {self.outer_bc!r}")
        if not np.isfinite(self.far_field):
            raise DomainError("far_field must be finite")
        if not self.reaction_scale >= 0:
            raise DomainError("reaction_scale must be nonnegative")


def operator_bands(grid, far_field=-1.0, outer_bc="dirichlet"):
    """Tridiagonal bands (lo, di, up) and constant vector of the discrete
    diffusion operator, conservative flux form.

    lo[i] multiplies u[i-1] and up[i] multiplies u[i+1]; lo[0] and
    up[m-1] are zero. The constant vector carries the Dirichlet ghost
    contribution (last cell only).
    """
    m = grid.m
    h = grid.h
    r = grid.nodes
    area = grid.faces ** (grid.n_dim - 1)
    geo = 1.0 / (r ** (grid.n_dim - 1) * h * h)

    lo = np.zeros(m)
    di = np.zeros(m)
    up = np.zeros(m)
    cv = np.zeros(m)

    inner = area[1:m]  # faces 1..m-1 between cells (i, i+1)
    up[: m - 1] = geo[: m - 1] * inner
    lo[1:] = geo[1:] * inner
    di[: m - 1] -= up[: m - 1]
    di[1:] -= lo[1:]

    if outer_bc == "dirichlet":
        # ghost value 2 u_D - u_{m-1} puts u_D on the face itself; first
        # order at this one cell, O(h^2) everywhere else
        w = 2.0 * geo[m - 1] * area[m]
        di[m - 1] -= w
        cv[m - 1] = w * far_field
    return lo, di, up, cv


def discrete_operator(field, far_field=-1.0, outer_bc="dirichlet"):
    """Apply the discrete diffusion operator; returns a field of Lu values."""
    if field.grid.m < 8:
        raise DomainError("operator needs at least 8 cells")
    lo, di, up, cv = operator_bands(field.grid, far_field, outer_bc)
    u = field.values
    out = di * u + cv
    out[:-1] += up[:-1] * u[1:]
    out[1:] += lo[1:] * u[:-1]
    return _raw_field(field.grid, out, field.t)


def _raw_field(grid, values, t):
    """Field constructor bypassing the invariant-interval check (operator
    outputs are not solution values)."""
    obj = object.__new__(RadialField)
    object.__setattr__(obj, "grid", grid)
    object.__setattr__(obj, "values", np.asarray(values, dtype=float))
    object.__setattr__(obj, "t", t)
    return obj


def step(field, config):
    """One time step of the configured scheme."""
    lo, di, up, cv = operator_bands(field.grid, config.far_field, config.outer_bc)
    u = stepper.advance(
        field.values,
        lo,
        di,
        up,
        cv,
        config.dt,
        1,
        config.reaction_scale,
        config.scheme,
    )
    return field.with_values(u, field.t + config.dt)


@dataclass
class EvolveResult:
    """Snapshots and diagnostics of one solver run."""

    grid: RadialGrid
    config: SolverConfig
    times: np.ndarray
    snapshots: np.ndarray  # (n_snapshots, m)
    track: np.ndarray | None  # (n_snapshots, k) interface radii
    signs: np.ndarray | None
    max_abs: np.ndarray
    far_values: np.ndarray

    @property
    def final_field(self):
        return RadialField(
            grid=self.grid, values=self.snapshots[-1], t=float(self.times[-1])
        )


def evolve(
    initial,
    config,
    t_final,
    callbacks=(),
    snapshot_dt=0.5,
    expected_k=None,
):
    """March the field from initial.t to t_final, snapshotting every
    snapshot_dt.

    With expected_k set, interfaces are extracted at every snapshot and
    the run dies with InterfaceLost / SpuriousInterface (time-stamped) if
    the crossing count changes. Callbacks receive each snapshot field.
    """
    t0 = initial.t
    if not t0 < t_final < 0:
        raise DomainError(
            f"need t_initial < t_final < 0, got {t0} -> {t_final}"
        )
    dt = config.dt
    n_total = int(round((t_final - t0) / dt))
    if abs(n_total * dt - (t_final - t0)) > 1e-9 * max(1.0, abs(t_final - t0)):
        raise DomainError(
            f"window ({t0}, {t_final}) is not a multiple of dt={dt}"
        )
    snap_every = max(1, int(round(snapshot_dt / dt)))

    lo, di, up, cv = operator_bands(
        initial.grid, config.far_field, config.outer_bc
    )

    times = [t0]
    snaps = [initial.values.copy()]
    track = []
    signs = None

    def observe(field):
        nonlocal signs
        if expected_k is not None:
            radii, s = extract_interfaces_with_signs(field, expected_k)
            track.append(radii)
            signs = s
        for cb in callbacks:
            cb(field)

    observe(initial)
    u = initial.values
    done = 0
    while done < n_total:
        chunk = min(snap_every, n_total - done)
        u = stepper.advance(
            u, lo, di, up, cv, dt, chunk, config.reaction_scale, config.scheme
        )
        done += chunk
        t_now = t0 + done * dt
        fld = initial.with_values(u, t_now)  # re-validates the bounds
        times.append(t_now)
        snaps.append(u.copy())
        observe(fld)

    snaps = np.array(snaps)
    return EvolveResult(
        grid=initial.grid,
        config=config,
        times=np.array(times),
        snapshots=snaps,
        track=np.array(track) if expected_k is not None else None,
        signs=signs,
        max_abs=np.max(np.abs(snaps), axis=1),
        far_values=snaps[:, -1],
    )


def rescale_check(base, scaled, epsilon):
    """Max |u(eps x, eps^2 t) - u_eps(x, t)| over common sample points.

    base solves the unit-reaction equation; scaled must have been run with
    reaction_scale = epsilon^2 on the wider grid. Each scaled snapshot
    time t needs a base snapshot at eps^2 t; missing matches or an empty
    radius overlap raise GridMismatch.
    """
    if not 0 < epsilon <= 1:
        raise DomainError(f"epsilon must be in (0, 1], got {epsilon}")
    x = scaled.grid.nodes
    r_base = base.grid.nodes
    inside = (epsilon * x >= r_base[0]) & (epsilon * x <= r_base[-1])
    if not np.any(inside):
        raise GridMismatch("scaled grid maps entirely outside the base grid")

    worst = 0.0
    matched = 0
    for i, t_s in enumerate(scaled.times):
        t_b = epsilon**2 * t_s
        j = int(np.argmin(np.abs(base.times - t_b)))
        if abs(base.times[j] - t_b) > 1e-9 * max(1.0, abs(t_b)):
            continue
        matched += 1
        u_base = np.interp(epsilon * x[inside], r_base, base.snapshots[j])
        diff = np.max(np.abs(u_base - scaled.snapshots[i][inside]))
        worst = max(worst, float(diff))
    if matched == 0:
        raise GridMismatch(
            "no scaled snapshot time maps onto a base snapshot time"
        )
    return worst
