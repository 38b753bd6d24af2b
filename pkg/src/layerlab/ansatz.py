"""Multi-layer ansatz, its defect under the radial equation, and the
piecewise-exponential comparison weight with its sup norm.

The ansatz is the alternating sum of k shifted profiles plus a parity
constant; the defect E is what substituting it into the equation leaves
over, concentrated at the layers and in the inter-layer tails.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .profile import (
    BETA_REFERENCE,
    SQRT2,
    heteroclinic,
    nonlinearity,
    profile_derivative,
)
from .toda import LayerState, toda_rhs


@dataclass(frozen=True)
class MultiLayerAnsatz:
    """k ordered layers at one time; parity fixes the far-field phase."""

    layers: LayerState

    @property
    def k(self):
        return self.layers.k

    @property
    def parity_offset(self):
        """-1 for even k, 0 for odd k: both limits r -> 0 and r -> inf
        then sit in a stable phase."""
        return -(1 + (-1) ** self.k) / 2.0

    @property
    def signs(self):
        return np.array([(-1.0) ** (j + 1) for j in range(1, self.k + 1)])


def evaluate_z(ansatz, r):
    """Alternating profile sum plus parity offset, scalar or array r."""
    r = np.asarray(r, dtype=float)
    rho = ansatz.layers.rho
    z = np.full(r.shape, ansatz.parity_offset)
    for sgn, rho_j in zip(ansatz.signs, rho):
        z = z + sgn * heteroclinic(r - rho_j)
    return float(z) if z.ndim == 0 else z


def error_term(ansatz, layer_velocities, n, r):
    """Defect E of the ansatz under u_t = u_rr + (n-1)/r u_r + f(u).

    E = sum_j (-1)^(j+1) (w'_j rho'_j + (n-1)/r w'_j) + f(z)
        - sum_j (-1)^(j+1) f(w_j),

    i.e. the moving-profile terms plus the nonlinear interaction misfit.
    layer_velocities supplies rho'_j (length k).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radii must be positive")
    vel = np.asarray(layer_velocities, dtype=float)
    if vel.shape != (ansatz.k,):
        raise DomainError(
            f"need {ansatz.k} layer velocities, got shape {vel.shape}"
        )
    rho = ansatz.layers.rho
    out = nonlinearity(evaluate_z(ansatz, r))
    for sgn, rho_j, vel_j in zip(ansatz.signs, rho, vel):
        s = r - rho_j
        wp = profile_derivative(s)
        out = out + sgn * (wp * vel_j + (n - 1) / r * wp - nonlinearity(heteroclinic(s)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class WeightFunction:
    """Piecewise-exponential comparison weight anchored at reference
    layers rho0, with decay rate sigma in (sqrt2/2, sqrt2).

    Band j (around layer j) runs between the midpoints of adjacent
    layers; inside it the weight decays away from the band's outer
    anchors. The phantom inner layer sits at rho0_1 - eta and the outer
    one at +infinity (whose term vanishes identically).

    innermost selects the first band's form: "verbatim" keeps only the
    outgoing term e^{sigma (r - rho0_2)}; "symmetric" adds the incoming
    term anchored at the phantom layer. For k = 1 the verbatim form
    degenerates to zero, so the symmetric variant is the default there.
    """

    sigma: float
    rho0: np.ndarray
    eta_value: float
    innermost: str = "default"

    def __post_init__(self):
        object.__setattr__(
            self, "rho0", np.atleast_1d(np.asarray(self.rho0, dtype=float))
        )
        if not SQRT2 / 2 < self.sigma < SQRT2:
            raise DomainError(
                f"sigma must lie in (sqrt2/2, sqrt2) = "
                f"({SQRT2 / 2:.6f}, {SQRT2:.6f}), got {self.sigma}"
            )
        if self.rho0[0] <= 0 or np.any(np.diff(self.rho0) <= 0):
            raise DomainError("reference layers must be positive increasing")
        if not self.eta_value > 0:
            raise DomainError("eta_value must be positive")
        if self.innermost == "default":
            resolved = "symmetric" if len(self.rho0) == 1 else "verbatim"
            object.__setattr__(self, "innermost", resolved)
        if self.innermost not in ("verbatim", "symmetric"):
            raise DomainError(f"unknown innermost form {self.innermost!r}")

    @property
    def k(self):
        return len(self.rho0)


def weight_phi(weights, r):
    """Evaluate the weight at scalar or array r > 0."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radii must be positive")
    sigma = weights.sigma
    rho0 = weights.rho0
    k = weights.k
    phantom = rho0[0] - weights.eta_value
    extended = np.concatenate([[phantom], rho0])
    edges = 0.5 * (extended[:-1] + extended[1:])  # band boundaries

    flat = np.atleast_1d(r)
    out = np.empty_like(flat)
    region = np.searchsorted(edges, flat)  # 0 = below all bands; j = band j
    below = region == 0
    out[below] = np.exp(sigma * (flat[below] - rho0[0]))
    for band in range(1, k + 1):
        mask = region == band
        if not np.any(mask):
            continue
        rb = flat[mask]
        outgoing = (
            np.exp(sigma * (rb - rho0[band])) if band + 1 <= k else 0.0
        )
        if band == 1 and weights.innermost == "verbatim":
            out[mask] = outgoing
        else:
            incoming = np.exp(sigma * (extended[band - 1] - rb))
            out[mask] = incoming + outgoing
    if np.any(out[~below] <= 0):
        raise DomainError(
            "weight degenerated to zero; the verbatim innermost form "
            "cannot be used with k = 1"
        )
    return float(out[0]) if r.ndim == 0 else out


def weighted_norm(r, values, weights):
    """sup over the grid of |values| / Phi(r)."""
    r = np.asarray(r, dtype=float)
    values = np.asarray(values, dtype=float)
    if r.shape != values.shape:
        raise DomainError("grid and values must have matching shapes")
    return float(np.max(np.abs(values) / weight_phi(weights, r)))


def check_error_bound(ansatz, weights, n, grid, velocities=None, beta=BETA_REFERENCE):
    """Smallest C with |E| <= C (1 + 1/r) Phi over the given radii.

    velocities defaults to the layer-system right-hand side at the
    ansatz's radii; pass finite-difference values for PDE-extracted
    layers.
    """
    r = grid.nodes if hasattr(grid, "nodes") else np.asarray(grid, dtype=float)
    if velocities is None:
        velocities = toda_rhs(ansatz.layers.rho, n, beta)
    defect = error_term(ansatz, velocities, n, r)
    envelope = (1.0 + 1.0 / r) * weight_phi(weights, r)
    return float(np.max(np.abs(defect) / envelope))
