"""Interface extraction from radial fields, asymptotic fits of layer
tracks, and projection diagnostics against the profile modes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InterfaceLost,
    SpuriousInterface,
    WindowMismatch,
    WindowTooShort,
)
from .profile import profile_derivative, shrinking_sphere
from .toda import LayerState, asymptotic_separation
from . import ansatz as ansatz_mod


@dataclass
class InterfaceTrack:
    """Zero-crossing radii of one run, one row per sample time.

    times may run toward 0 (PDE runs) or away from it (ancient-direction
    integrations); they must be strictly monotone either way. signs holds
    the crossing direction per layer (+1 rising outward).
    """

    times: np.ndarray
    radii: np.ndarray
    signs: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.radii = np.atleast_2d(np.asarray(self.radii, dtype=float))
        self.signs = np.asarray(self.signs, dtype=float)
        if self.radii.shape[0] != len(self.times):
            raise DomainError("times and radii row count mismatch")
        dt = np.diff(self.times)
        if len(dt) and not (np.all(dt > 0) or np.all(dt < 0)):
            raise DomainError("track times must be strictly monotone")
        if self.k > 1 and np.any(np.diff(self.radii, axis=1) <= 0):
            raise DomainError("track radii must be increasing at each time")

    @property
    def k(self):
        return self.radii.shape[1]

    @classmethod
    def from_evolve(cls, result):
        if result.track is None:
            raise DomainError("run was made without interface tracking")
        return cls(times=result.times, radii=result.track, signs=result.signs)

    @classmethod
    def from_toda(cls, trajectory):
        k = trajectory.k
        signs = np.array([(-1.0) ** (j + 1) for j in range(1, k + 1)])
        return cls(times=trajectory.times, radii=trajectory.radii, signs=signs)

    def gaps(self):
        return np.diff(self.radii, axis=1)


def _refine_crossing(r, u, i):
    """Crossing radius between nodes i, i+1: local cubic plus two secant
    iterations, clamped to the bracketing cell."""
    lo = max(0, min(i - 1, len(r) - 4))
    window = slice(lo, lo + 4)
    poly = np.polynomial.Polynomial.fit(r[window], u[window], deg=3)
    x0, x1 = r[i], r[i + 1]
    f0, f1 = poly(x0), poly(x1)
    for _ in range(2):
        denom = f1 - f0
        if denom == 0:
            break
        x2 = x1 - f1 * (x1 - x0) / denom
        x2 = min(max(x2, r[i]), r[i + 1])
        x0, f0, x1, f1 = x1, f1, x2, poly(x2)
    return x1


def extract_interfaces_with_signs(field, expected_k):
    """Crossing radii plus crossing directions; see extract_interfaces."""
    r = field.grid.nodes
    u = field.values
    if field.grid.m < 8:
        raise DomainError("field too coarse for interface extraction")

    crossings = []
    signs = []
    for i in np.nonzero(u[:-1] * u[1:] < 0)[0]:
        crossings.append(_refine_crossing(r, u, int(i)))
        signs.append(1.0 if u[i + 1] > u[i] else -1.0)
    for i in np.nonzero(u == 0)[0]:
        crossings.append(float(r[i]))
        i0 = max(int(i) - 1, 0)
        i1 = min(int(i) + 1, len(u) - 1)
        signs.append(1.0 if u[i1] >= u[i0] else -1.0)

    order = np.argsort(crossings)
    crossings = np.asarray(crossings)[order]
    signs = np.asarray(signs)[order]
    found = len(crossings)
    if found < expected_k:
        raise InterfaceLost(
            f"expected {expected_k} interfaces, found {found} at "
            f"t={field.t}: {crossings}",
            t=field.t,
            found=crossings,
        )
    if found > expected_k:
        raise SpuriousInterface(
            f"expected {expected_k} interfaces, found {found} at "
            f"t={field.t}: {crossings}",
            t=field.t,
            found=crossings,
        )
    return crossings, signs


def extract_interfaces(field, expected_k):
    """Zero crossings of the field, exactly expected_k of them.

    Sign-change scan over the cells, then a local-cubic secant refinement
    inside each bracketing cell (the field is near-linear across one cell
    at an interface). Raises InterfaceLost / SpuriousInterface with the
    offending locations otherwise.
    """
    radii, _ = extract_interfaces_with_signs(field, expected_k)
    return radii


@dataclass
class AsymptoticFit:
    """Per-layer least-squares fit of rho_j - zeta against the fan-out
    law (1/sqrt2) log(|t|/log|t|)."""

    slopes: np.ndarray
    intercepts: np.ndarray
    rms: np.ndarray
    stderr: np.ndarray
    window: tuple
    n_used: int


def fit_theorem12(track, n, k):
    """Fit layer deviations from the collapsing-sphere radius against the
    fan-out law.

    The 10% of samples nearest t = 0 are excluded (collision effects sit
    outside the asymptotic regime); the remaining window must span at
    least 1.5 decades of |t| or WindowTooShort is raised.
    """
    if track.k != k:
        raise DomainError(f"track has k={track.k}, not {k}")
    at = -track.times
    keep = np.argsort(at)[int(0.1 * len(at)) :]
    if len(keep) < 4:
        raise WindowTooShort("fewer than 4 usable samples")
    t = track.times[keep]
    at = at[keep]
    if np.max(at) / np.min(at) < 10**1.5 * (1 - 1e-12):
        raise WindowTooShort(
            f"|t| spans only {np.log10(np.max(at) / np.min(at)):.2f} "
            f"decades; need 1.5"
        )
    x = asymptotic_separation(t)
    y = track.radii[keep] - shrinking_sphere(n, t)[:, None]

    design = np.column_stack([x, np.ones_like(x)])
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    slopes, intercepts = coeffs[0], coeffs[1]
    resid = y - design @ coeffs
    rms = np.sqrt(np.mean(resid**2, axis=0))
    spread = float(np.sum((x - x.mean()) ** 2))
    stderr = rms / np.sqrt(spread)
    return AsymptoticFit(
        slopes=slopes,
        intercepts=intercepts,
        rms=rms,
        stderr=stderr,
        window=(float(t.min()), float(t.max())),
        n_used=len(keep),
    )


def smoothed_velocity(times, values):
    """Derivative estimate from local quadratic fits over 5 samples.

    Handles nonuniform spacing; raw centered differences of extracted
    crossings carry O(h^2) extraction noise that the local fit averages
    down.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    nt = len(times)
    if nt < 5:
        raise DomainError("need at least 5 samples for velocity smoothing")
    out = np.empty_like(values)
    for i in range(nt):
        lo = max(0, min(i - 2, nt - 5))
        sl = slice(lo, lo + 5)
        tt = times[sl] - times[i]
        coeffs = np.polyfit(tt, values[sl], 2)
        out[i] = coeffs[1]
    return out


def mcf_residual(track, n):
    """Per-layer rho' + (n-1)/rho along the track.

    Zero for the exact collapsing sphere; for k >= 2 the layers feel the
    neighbor interactions, so this residual should reproduce them.
    """
    vel = np.column_stack(
        [smoothed_velocity(track.times, track.radii[:, j]) for j in range(track.k)]
    )
    return track.times, vel + (n - 1) / track.radii


@dataclass
class ProjectionDiagnostics:
    """Projections of a residual field on the profile slope modes, and
    the Gram matrix of those modes."""

    coefficients: np.ndarray
    gram: np.ndarray


def project_residual(field, layers, n):
    """Weighted projections int (u - z) w'(r - rho_j) r^{n-1} dr and the
    mode Gram matrix, by the grid's midpoint rule."""
    r = field.grid.nodes
    h = field.grid.h
    z = ansatz_mod.evaluate_z(ansatz_mod.MultiLayerAnsatz(layers), r)
    resid = field.values - z
    weight = r ** (n - 1) * h
    modes = np.column_stack([profile_derivative(r - rho_j) for rho_j in layers.rho])
    coefficients = modes.T @ (resid * weight)
    gram = (modes * weight[:, None]).T @ modes
    return ProjectionDiagnostics(coefficients=coefficients, gram=gram)


@dataclass
class TrackComparison:
    """Pointwise discrepancies between two tracks on their time overlap."""

    times: np.ndarray
    layer_diff: np.ndarray
    gap_diff: np.ndarray | None

    @property
    def max_layer_discrepancy(self):
        return np.max(self.layer_diff, axis=1)

    @property
    def max_gap_discrepancy(self):
        if self.gap_diff is None:
            return None
        return np.max(self.gap_diff, axis=1)

    @property
    def max_discrepancy(self):
        return float(np.max(self.layer_diff))


def compare_pde_vs_toda(pde_track, toda_track):
    """Interpolate the reference track onto the PDE sample times inside
    the common window and difference layer radii and gaps."""
    if pde_track.k != toda_track.k:
        raise DomainError(
            f"track layer counts differ: {pde_track.k} vs {toda_track.k}"
        )
    t_lo = max(pde_track.times.min(), toda_track.times.min())
    t_hi = min(pde_track.times.max(), toda_track.times.max())
    if t_lo >= t_hi:
        raise WindowMismatch(
            f"tracks do not overlap: [{pde_track.times.min()}, "
            f"{pde_track.times.max()}] vs [{toda_track.times.min()}, "
            f"{toda_track.times.max()}]"
        )
    sel = (pde_track.times >= t_lo) & (pde_track.times <= t_hi)
    t = pde_track.times[sel]
    order = np.argsort(toda_track.times)
    ref_t = toda_track.times[order]
    ref = np.column_stack(
        [
            np.interp(t, ref_t, toda_track.radii[order, j])
            for j in range(toda_track.k)
        ]
    )
    layer_diff = np.abs(pde_track.radii[sel] - ref)
    gap_diff = None
    if pde_track.k >= 2:
        gap_diff = np.abs(np.diff(pde_track.radii[sel], axis=1) - np.diff(ref, axis=1))
    return TrackComparison(times=t, layer_diff=layer_diff, gap_diff=gap_diff)
