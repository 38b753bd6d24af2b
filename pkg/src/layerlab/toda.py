"""Layer dynamics: the gap ODE eta, explicit layer constants, the first
approximation, the reduced matrix algebra, full integration of the layer
system, and the Picard-type correction.

All long-horizon integration happens in the substituted variable
tau = log(-t); a window like [-1e6, -1e2] becomes a tau interval of
length log(1e4), and the step controller works at uniform relative
accuracy in |t|.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CollisionError,
    DomainError,
    EigenFailure,
    LinAlgFailure,
    NoContraction,
    OrderingViolation,
)
from .profile import SQRT2, shrinking_sphere
from .rk import OdeSolution, solve_ode


def asymptotic_separation(t):
    """Leading mean-gap growth law (1/sqrt(2)) log(|t| / log|t|).

    Defined for t < -1 (needs log|t| > 0).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t >= -1.0):
        raise DomainError("asymptotic separation needs t < -1")
    at = -t
    out = (np.log(at) - np.log(np.log(at))) / SQRT2
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# eta: the scalar gap ODE  eta' + eta/(2t) + e^{-sqrt(2) eta} = 0, eta(-1)=0
# ---------------------------------------------------------------------------


@dataclass
class EtaSolution:
    """Dense-output solution of the gap ODE on t in [-T_end, -1].

    Stores the tau = log(-t) grid with values and t-derivatives at the
    nodes; evaluation between nodes is cubic Hermite in tau.
    """

    tau_grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray  # eta'(t) at the nodes
    T_end: float
    rel_tol: float
    _sol: OdeSolution = field(repr=False)

    def _tau(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t > -1.0 + 1e-12) or np.any(t < -self.T_end * (1 + 1e-12)):
            raise DomainError(
                f"t must lie in [-{self.T_end}, -1], got range "
                f"[{t.min()}, {t.max()}]"
            )
        return np.log(np.clip(-t, 1.0, self.T_end))

    def eta(self, t):
        """eta(t) for scalar or array t in [-T_end, -1]."""
        out = self._sol(self._tau(t))[..., 0]
        return float(out) if out.ndim == 0 else out

    def eta_prime(self, t):
        """d eta / dt from the interpolant (chain rule through tau)."""
        t = np.asarray(t, dtype=float)
        dtau = self._sol.derivative(self._tau(t))[..., 0]
        out = dtau / t
        return float(out) if out.ndim == 0 else out

    def residual_at_midpoints(self):
        """ODE residual |eta' + eta/(2t) + e^{-sqrt2 eta}| between nodes.

        Evaluated purely from the interpolant, so this measures the
        dense-output quality rather than restating the right-hand side.
        """
        tau_mid = 0.5 * (self.tau_grid[:-1] + self.tau_grid[1:])
        t_mid = -np.exp(tau_mid)
        eta = self.eta(t_mid)
        etap = self.eta_prime(t_mid)
        return t_mid, etap + eta / (2.0 * t_mid) + np.exp(-SQRT2 * eta)

    def upper_bound_margin(self):
        """max of eta(t) - (1/sqrt2) log(1 - sqrt2 (t+1)) over the nodes.

        The comparison function solves eta' = -e^{-sqrt2 eta} with the
        same initial value, and eta' <= -e^{-sqrt2 eta} + 0 holds, so the
        margin must be <= 0 up to interpolation noise.
        """
        t = -np.exp(self.tau_grid)
        bound = np.log1p(-SQRT2 * (t + 1.0)) / SQRT2
        return float(np.max(self.values - bound))

    def asymptotic_deviation(self, t):
        """eta(t) minus the leading separation law, for t < -e."""
        return self.eta(t) - asymptotic_separation(t)


def solve_eta(T_end, rel_tol):
    """Integrate the gap ODE from t=-1 down to t=-T_end.

    Parameters
    ----------
    T_end : float >= 10
    rel_tol : float in (0, 1e-8]

    Returns
    -------
    EtaSolution

    The tau step is capped at (28.8 rel_tol)^(1/3) so the cubic Hermite
    dense output keeps the midpoint ODE residual below the 10 * rel_tol
    budget (local Hermite error ~ h^4 |y''''| / 384, slope error ~ h^3/72).
    """
    if not T_end >= 10:
        raise DomainError(f"T_end must be >= 10, got {T_end}")
    if not 0 < rel_tol <= 1e-8:
        raise DomainError(f"rel_tol must be in (0, 1e-8], got {rel_tol}")

    h_max = min(0.05, max(5e-4, (28.8 * rel_tol) ** (1.0 / 3.0)))

    def rhs(tau, y):
        return np.array([-0.5 * y[0] + math.exp(tau - SQRT2 * y[0])])

    sol = solve_ode(
        rhs,
        (0.0, math.log(T_end)),
        [0.0],
        rel_tol=rel_tol,
        abs_tol=rel_tol * 1e-2,
        max_step=h_max,
    )
    tau = sol.ts
    values = sol.ys[:, 0]
    t_nodes = -np.exp(tau)
    derivatives = sol.fs[:, 0] / t_nodes

    if np.any(np.diff(values) < -1e-10):
        raise DomainError("eta lost monotonicity; solver output rejected")
    return EtaSolution(
        tau_grid=tau,
        values=values,
        derivatives=derivatives,
        T_end=float(T_end),
        rel_tol=float(rel_tol),
        _sol=sol,
    )


# ---------------------------------------------------------------------------
# explicit constants and the first approximation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TodaConstants:
    """Explicit gap offsets b_l and layer offsets gamma_j for k layers."""

    k: int
    beta: float
    b: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        if self.b.shape != (self.k - 1,) or self.gamma.shape != (self.k,):
            raise DomainError("constants have inconsistent shapes")
        if self.k > 1:
            if not np.array_equal(self.b, self.b[::-1]):
                raise DomainError("b must be palindromic")
            if not np.allclose(
                self.gamma, -self.gamma[::-1], rtol=0, atol=1e-12
            ):
                raise DomainError("gamma must be antisymmetric")


def toda_constants(k, beta):
    """Offsets making the gap system stationary relative to eta.

    b_l = -(1/sqrt2) log((k-l) l / (2 beta)); gamma accumulates half-sums
    of b antisymmetrically (middle layer of odd k sits at zero).
    """
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    k = int(k)
    ell = np.arange(1, k)
    b = -np.log((k - ell) * ell / (2.0 * beta)) / SQRT2
    gamma = np.zeros(k)
    for j in range(1, k // 2 + 1):
        half_sum = 0.5 * float(np.sum(b[j - 1 : k - j]))
        gamma[j - 1] = -half_sum
        gamma[k - j] = half_sum
    return TodaConstants(k=k, beta=float(beta), b=b, gamma=gamma)


@dataclass(frozen=True)
class LayerState:
    """Ordered layer radii at one time."""

    t: float
    rho: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rho", np.atleast_1d(np.asarray(self.rho, float)))
        if not self.t < 0:
            raise DomainError(f"time must be negative, got {self.t}")
        if self.rho[0] <= 0 or np.any(np.diff(self.rho) <= 0):
            raise OrderingViolation(
                f"radii must be positive and strictly increasing, got "
                f"{self.rho} at t={self.t}"
            )

    @property
    def k(self):
        return len(self.rho)

    @property
    def gaps(self):
        return np.diff(self.rho)


def layer_coefficients(k):
    """The fan-out coefficients j - (k+1)/2 for j = 1..k."""
    return np.arange(1, k + 1) - (k + 1) / 2.0


def first_approximation(k, n, constants, eta, t):
    """Layer radii zeta(t) + (j - (k+1)/2) eta(t) + gamma_j.

    Raises OrderingViolation when t is too close to 0 for the requested k
    (the radii would cross or go nonpositive).
    """
    if constants.k != k:
        raise DomainError(f"constants built for k={constants.k}, not {k}")
    zeta = shrinking_sphere(n, t)
    eta_t = eta.eta(t)
    rho = zeta + layer_coefficients(k) * eta_t + constants.gamma
    return LayerState(t=float(t), rho=rho)


def verify_lemma52_residual(k, constants, eta, t_samples):
    """Substitute (j-(k+1)/2) eta + gamma_j into the reduced gap system.

    The reduced system is rho' + rho/(2t) - beta e^{-sqrt2 (rho_{j+1}-rho_j)}
    + beta e^{-sqrt2 (rho_j - rho_{j-1})} = gamma_j / (2t), with the end
    interaction terms absent. Returns the max absolute defect over layers
    and samples; with an exact eta this is an identity, so the defect
    measures the eta interpolant.
    """
    if constants.k != k:
        raise DomainError(f"constants built for k={constants.k}, not {k}")
    t = np.atleast_1d(np.asarray(t_samples, dtype=float))
    eta_t = eta.eta(t)
    eta_p = eta.eta_prime(t)
    coeff = layer_coefficients(k)
    rho = coeff[None, :] * eta_t[:, None] + constants.gamma[None, :]
    vel = coeff[None, :] * eta_p[:, None]
    att = constants.beta * np.exp(-SQRT2 * np.diff(rho, axis=1))
    zeros = np.zeros((len(t), 1))
    pull = np.hstack([att, zeros])  # toward the next layer outward
    push = np.hstack([zeros, att])  # away from the previous layer
    lhs = vel + rho / (2.0 * t[:, None]) - pull + push
    resid = lhs - constants.gamma[None, :] / (2.0 * t[:, None])
    return float(np.max(np.abs(resid)))


# ---------------------------------------------------------------------------
# matrix reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionMatrices:
    """Change of variables to gap coordinates and the diagonalized core.

    B maps radii to (gaps, sum); C is the (k-1) second-difference matrix;
    A = C^{1/2} diag(a) C^{1/2} with a_l = (k-l) l carries the linearized
    interaction; its eigenpairs drive the Picard integrating factors.
    """

    k: int
    B: np.ndarray
    B_inv: np.ndarray
    C: np.ndarray
    C_half: np.ndarray
    C_half_inv: np.ndarray
    a: np.ndarray
    A: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def reduction_matrices(k):
    """Build the reduction matrices for k >= 2 layers.

    Raises EigenFailure if a decomposition fails and LinAlgFailure if B
    cannot be inverted (neither occurs for the sizes in scope; the checks
    guard against silent numerical corruption).
    """
    if int(k) != k or k < 2:
        raise DomainError(f"matrix reduction needs integer k >= 2, got {k}")
    k = int(k)

    B = np.zeros((k, k))
    for i in range(k - 1):
        B[i, i] = -1.0
        B[i, i + 1] = 1.0
    B[k - 1, :] = 1.0
    try:
        B_inv = np.linalg.inv(B)
    except np.linalg.LinAlgError as exc:
        raise LinAlgFailure(f"B is singular for k={k}") from exc

    m = k - 1
    C = 2.0 * np.eye(m) - np.eye(m, k=1) - np.eye(m, k=-1)
    try:
        c_vals, c_vecs = np.linalg.eigh(C)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure("eigendecomposition of C failed") from exc
    if np.any(c_vals <= 0):
        raise EigenFailure(f"C is not positive definite: eigenvalues {c_vals}")
    C_half = c_vecs @ np.diag(np.sqrt(c_vals)) @ c_vecs.T
    C_half = 0.5 * (C_half + C_half.T)
    C_half_inv = c_vecs @ np.diag(1.0 / np.sqrt(c_vals)) @ c_vecs.T
    C_half_inv = 0.5 * (C_half_inv + C_half_inv.T)

    a = (k - np.arange(1, k)) * np.arange(1, k)
    A = C_half @ np.diag(a.astype(float)) @ C_half
    A = 0.5 * (A + A.T)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure("eigendecomposition of A failed") from exc
    if np.any(eigenvalues <= 0):
        raise EigenFailure(
            f"A must have positive eigenvalues, got {eigenvalues}"
        )

    mats = ReductionMatrices(
        k=k,
        B=B,
        B_inv=B_inv,
        C=C,
        C_half=C_half,
        C_half_inv=C_half_inv,
        a=a.astype(float),
        A=A,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
    )
    _validate_reduction(mats)
    return mats


def _validate_reduction(mats):
    k = mats.k
    if np.max(np.abs(mats.B @ mats.B_inv - np.eye(k))) > 1e-12:
        raise LinAlgFailure("B inverse check failed")
    if np.max(np.abs(mats.C_half @ mats.C_half - mats.C)) > 1e-12:
        raise EigenFailure("C_half squared does not reproduce C")
    m = k - 1
    if np.max(np.abs(mats.eigenvectors.T @ mats.eigenvectors - np.eye(m))) > 1e-12:
        raise EigenFailure("eigenvectors of A lost orthogonality")


# ---------------------------------------------------------------------------
# full layer system
# ---------------------------------------------------------------------------


def toda_rhs(rho, n, beta):
    """Right-hand side -(n-1)/rho_j + attraction difference of neighbors.

    The boundary conventions rho_0 = -inf, rho_{k+1} = +inf enter as
    literal zero interaction terms.
    """
    rho = np.asarray(rho, dtype=float)
    att = beta * np.exp(-SQRT2 * np.diff(rho))
    zero = np.zeros(1)
    return -(n - 1) / rho + np.concatenate([att, zero]) - np.concatenate([zero, att])


@dataclass
class TodaTrajectory:
    """Accepted states of one layer-system integration.

    Indexable as a sequence of LayerState; sample(t) evaluates the dense
    output anywhere inside the covered window.
    """

    k: int
    n: int
    beta: float
    times: np.ndarray
    radii: np.ndarray
    status: str
    _sol: OdeSolution = field(repr=False)

    def __len__(self):
        return len(self.times)

    def __getitem__(self, i):
        return LayerState(t=float(self.times[i]), rho=self.radii[i])

    def sample(self, t):
        if not t < 0:
            raise DomainError(f"time must be negative, got {t}")
        rho = self._sol(math.log(-t))
        return LayerState(t=float(t), rho=rho)

    def gaps(self):
        return np.diff(self.radii, axis=1)


def integrate_toda(
    k,
    n,
    beta,
    initial,
    t_final,
    rel_tol=1e-10,
    gap_floor=0.2,
    radius_floor=0.2,
):
    """Integrate the layer system from initial.t to t_final (either
    direction) in tau = log(-t).

    Raises CollisionError when a gap or the innermost radius falls under
    its floor; the partial trajectory up to the offending step is attached
    to the exception, since collisions are the expected end state of
    forward runs approaching t = 0.
    """
    if initial.k != k:
        raise DomainError(f"initial state has k={initial.k}, not {k}")
    if not t_final < 0:
        raise DomainError(f"t_final must be negative, got {t_final}")
    if t_final == initial.t:
        raise DomainError("empty integration window")

    def rhs(tau, rho):
        t = -math.exp(tau)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            return t * toda_rhs(rho, n, beta)

    collision = {}

    def on_accept(tau, rho):
        if rho[0] <= radius_floor:
            collision["t"] = -math.exp(tau)
            collision["why"] = f"innermost radius reached {rho[0]:.4f}"
            return False
        if k > 1:
            g = np.diff(rho)
            if np.any(g <= 0):
                raise OrderingViolation(
                    f"layer ordering lost at t={-math.exp(tau)}"
                )
            if g.min() <= gap_floor:
                collision["t"] = -math.exp(tau)
                collision["why"] = f"gap reached {g.min():.4f}"
                return False
        return True

    sol = solve_ode(
        rhs,
        (math.log(-initial.t), math.log(-t_final)),
        initial.rho,
        rel_tol=rel_tol,
        abs_tol=rel_tol * 1e-3,
        accept_callback=on_accept,
    )
    trajectory = TodaTrajectory(
        k=k,
        n=n,
        beta=float(beta),
        times=-np.exp(sol.ts),
        radii=sol.ys,
        status="collided" if sol.status == "terminated" else "finished",
        _sol=sol,
    )
    if trajectory.status == "collided":
        raise CollisionError(
            f"layers collided at t={collision['t']:.6g}: {collision['why']}",
            t=collision["t"],
            partial=trajectory,
        )
    return trajectory


# ---------------------------------------------------------------------------
# Picard correction
# ---------------------------------------------------------------------------


def geometric_decrease(changes, ratio=0.9):
    """True if each successive change is at most ratio times the previous.

    The first entry is unconstrained; ties at zero count as decreasing.
    """
    return all(c1 <= ratio * c0 + 1e-300 for c0, c1 in zip(changes, changes[1:]))


@dataclass
class PicardReport:
    """Result of the fixed-point iteration for the correction h."""

    k: int
    n: int
    T0: float
    T_end: float
    forcing: str
    converged: bool
    iterations: int
    changes: list
    t: np.ndarray
    h: np.ndarray
    delta: np.ndarray
    eigenvalues: np.ndarray
    envelope_coefficient: float
    envelope_rms_ratio: float
    envelope_window: tuple


def _log_integrating_factors(t_grid, exp_eta, lam_all):
    """log of mu_i(t) = sqrt(-t) g(t)^{sqrt2 lam_i} on the grid.

    g(t) = exp(0.5 int_t^{-T0} e^{-sqrt2 eta}); kernels always use the
    difference of two log-mu values, which is <= 0, so the exponentials
    in the integral map never overflow.
    """
    seg = 0.5 * (exp_eta[:-1] + exp_eta[1:]) * (t_grid[:-1] - t_grid[1:])
    log_g = 0.5 * np.concatenate([[0.0], np.cumsum(seg)])
    return 0.5 * np.log(-t_grid)[:, None] + SQRT2 * lam_all[None, :] * log_g[:, None]


def _integral_map(forcing_modes, log_mu, t_grid):
    """Apply omega_i(t) = -(1/mu_i) int_t^{-T0} mu_i Gamma_i ds columnwise.

    Trapezoid on the geometric grid; index 0 is t = -T0 where the data is
    pinned to zero.
    """
    n, m = forcing_modes.shape
    out = np.zeros((n, m))
    dt_seg = t_grid[:-1] - t_grid[1:]  # positive
    for i in range(1, n):
        w = np.exp(log_mu[: i + 1] - log_mu[i])
        f = w * forcing_modes[: i + 1]
        out[i] = -np.sum(0.5 * (f[:-1] + f[1:]) * dt_seg[:i, None], axis=0)
    return out


def picard_correction(
    k,
    n,
    constants,
    eta,
    T0,
    T_end,
    max_iters=60,
    tol=1e-9,
    forcing="full",
    nodes_per_decade=48,
):
    """Iterate the integral maps for the layer correction h with zero data
    at t = -T0, on a geometric grid down to t = -T_end.

    forcing selects what drives the maps:
      "none"   -- homogeneous maps; h = 0 is the exact fixed point.
      "linear" -- frozen mode forcing -delta_i/(2t), one kernel pass.
      "full"   -- self-consistent forcing re-evaluated at the current
                  iterate: exact curvature differences, the (eta + gap
                  correction)/(2t) bookkeeping, the superlinear remainder
                  of the interaction exponentials, and the mean mode.

    Returns a PicardReport; raises NoContraction when the sup-norm changes
    stop decreasing or the budget runs out before tol.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    if not T0 >= 2:
        raise DomainError(f"T0 must be >= 2, got {T0}")
    if not T_end >= 10 * T0:
        raise DomainError("T_end must cover at least one decade past T0")
    if forcing not in ("none", "linear", "full"):
        raise DomainError(f"unknown forcing mode {forcing!r}")
    if nodes_per_decade < 32:
        raise DomainError("need at least 32 nodes per decade")
    if eta.T_end < T_end:
        raise DomainError("eta solution does not cover T_end")

    k = int(k)
    decades = math.log10(T_end / T0)
    n_nodes = int(math.ceil(decades * nodes_per_decade)) + 1
    tau = np.linspace(math.log(T0), math.log(T_end), n_nodes)
    t_grid = -np.exp(tau)

    eta_g = eta.eta(t_grid)
    exp_eta = np.exp(-SQRT2 * eta_g)
    zeta = shrinking_sphere(n, t_grid)
    coeff = layer_coefficients(k)
    rho0 = zeta[:, None] + coeff[None, :] * eta_g[:, None] + constants.gamma[None, :]

    if k >= 2:
        mats = reduction_matrices(k)
        lam = mats.eigenvalues
        proj = mats.C_half_inv @ mats.eigenvectors  # columns: C^{-1/2} Lambda
        lift = mats.C_half @ mats.eigenvectors
        delta = proj.T @ constants.b
    else:
        mats = None
        lam = np.zeros(0)
        delta = np.zeros(0)

    lam_all = np.concatenate([lam, [0.0]])  # last column is the mean mode
    log_mu = _log_integrating_factors(t_grid, exp_eta, lam_all)
    two_t = 2.0 * t_grid[:, None]

    def forcing_at(h):
        rho = rho0 + h
        modes = np.zeros((n_nodes, k - 1 + 1))
        if forcing == "none":
            return modes
        if forcing == "linear":
            if k >= 2:
                modes[:, : k - 1] = -delta[None, :] / two_t
            return modes
        p_mean = h.mean(axis=1)
        modes[:, -1] = (n - 1) * np.mean(
            1.0 / zeta[:, None] - 1.0 / rho, axis=1
        ) + p_mean / (2.0 * t_grid)
        if k >= 2:
            pbar = np.diff(h, axis=1)
            delta_curv = np.diff(1.0 / rho, axis=1)
            remainder = np.expm1(-SQRT2 * pbar) + SQRT2 * pbar
            R = exp_eta[:, None] * (0.5 * mats.a[None, :]) * remainder
            g_bar = -(n - 1) * delta_curv + (eta_g[:, None] + pbar) / two_t - R @ mats.C
            modes[:, : k - 1] = g_bar @ proj
        return modes

    h = np.zeros((n_nodes, k))
    changes = []
    converged = False
    for _ in range(max_iters):
        out = _integral_map(forcing_at(h), log_mu, t_grid)
        p_mean = out[:, -1]
        if k >= 2:
            pbar = out[:, : k - 1] @ lift.T
            rhs = np.hstack([pbar, k * p_mean[:, None]])
            h_new = rhs @ mats.B_inv.T
        else:
            h_new = p_mean[:, None]
        change = float(np.max(np.abs(h_new - h)))
        changes.append(change)
        h = h_new
        if change <= tol:
            converged = True
            break
        if change > 1e3:
            raise NoContraction(
                f"iteration diverged (change {change:.3g})", changes=changes
            )
        if len(changes) >= 3 and changes[-1] > changes[-2] > changes[-3]:
            raise NoContraction(
                "sup-norm changes increased twice in a row", changes=changes
            )
    if not converged:
        raise NoContraction(
            f"no geometric decrease to tol={tol} within {max_iters} "
            f"iterations",
            changes=changes,
        )

    envelope = np.max(np.abs(h), axis=1)
    window = -t_grid >= 10.0 * T0
    if np.count_nonzero(window) < 10:
        window = np.ones_like(envelope, dtype=bool)
    x = 1.0 / np.log(-t_grid[window])
    env_w = envelope[window]
    denom = float(np.dot(x, x))
    c_fit = float(np.dot(env_w, x) / denom) if denom > 0 else 0.0
    resid = env_w - c_fit * x
    env_rms = float(np.sqrt(np.mean(env_w**2)))
    rms_ratio = (
        float(np.sqrt(np.mean(resid**2)) / env_rms) if env_rms > 0 else 0.0
    )

    return PicardReport(
        k=k,
        n=n,
        T0=float(T0),
        T_end=float(T_end),
        forcing=forcing,
        converged=converged,
        iterations=len(changes),
        changes=changes,
        t=t_grid,
        h=h,
        delta=delta,
        eigenvalues=lam,
        envelope_coefficient=c_fit,
        envelope_rms_ratio=rms_ratio,
        envelope_window=(float(t_grid[window][0]), float(t_grid[window][-1])),
    )


def picard_damping_factor(eta, T0, T_end, nodes_per_decade=48):
    """Discrete damping constant of the kernel with weight sqrt(-t) g(t).

    Returns max over grid times t of (1/mu(t)) int_t^{-T0} mu(s)/(-s) ds.
    Decreasing values for growing T0 are what make the iteration contract.
    """
    if not T_end >= 10 * T0:
        raise DomainError("T_end must cover at least one decade past T0")
    decades = math.log10(T_end / T0)
    n_nodes = int(math.ceil(decades * nodes_per_decade)) + 1
    tau = np.linspace(math.log(T0), math.log(T_end), n_nodes)
    t_grid = -np.exp(tau)
    exp_eta = np.exp(-SQRT2 * eta.eta(t_grid))
    log_mu = _log_integrating_factors(t_grid, exp_eta, np.array([1.0 / SQRT2]))
    forcing = (1.0 / (-t_grid))[:, None]
    out = _integral_map(forcing, log_mu, t_grid)
    return float(np.max(np.abs(out)))
