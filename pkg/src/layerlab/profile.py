"""Closed forms for the one-dimensional transition profile and the cubic
nonlinearity, plus the interaction constant assembled from two line
integrals of the profile.

Everything here is tanh/sech algebra; nothing is numerically integrated
except the two integrals in compute_beta, which exist to verify the
closed-form constant rather than to replace it.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import adaptive_quad

SQRT2 = math.sqrt(2.0)

# Closed form of 6 * i_tail / i_kinetic; compute_beta re-derives it by
# quadrature and the unit tests pin the agreement.
BETA_REFERENCE = 12.0 * SQRT2


def heteroclinic(s):
    """Transition profile w(s) = tanh(s / sqrt(2)), odd and increasing."""
    return np.tanh(np.asarray(s, dtype=float) / SQRT2)


def profile_derivative(s):
    """w'(s) = (1 - w(s)^2) / sqrt(2); positive, symmetric in s."""
    w = heteroclinic(s)
    return (1.0 - w * w) / SQRT2


def profile_second_derivative(s):
    """w''(s) = -sqrt(2) * w(s) * w'(s), which equals -f(w(s))."""
    return -SQRT2 * heteroclinic(s) * profile_derivative(s)


def nonlinearity(u):
    """f(u) = (1 - u^2) u."""
    u = np.asarray(u, dtype=float)
    return (1.0 - u * u) * u


def double_well(u):
    """F(u) = (1 - u^2)^2 / 4, the potential with wells at u = -1, +1."""
    u = np.asarray(u, dtype=float)
    return 0.25 * (1.0 - u * u) ** 2


@dataclass(frozen=True)
class InteractionConstants:
    """The interaction strength beta and the two line integrals behind it.

    i_kinetic is the integral of (w')^2 over the line; i_tail is the
    integral of e^{sqrt(2) x} (1 - w^2) w'.
    """

    beta: float
    i_kinetic: float
    i_tail: float

    def __post_init__(self):
        if not (self.beta > 0 and self.i_kinetic > 0 and self.i_tail > 0):
            raise DomainError("interaction constants must be positive")
        if abs(self.beta * self.i_kinetic - 6.0 * self.i_tail) > 1e-9:
            raise DomainError("beta must equal 6 * i_tail / i_kinetic")


def compute_beta(quadrature_tolerance):
    """Assemble the interaction constant from the two profile integrals.

    The line is truncated at L = log(100 / tol) / sqrt(2); both integrands
    decay at least like e^{-sqrt(2) |s|}, so the discarded tails are below
    tol / 10.

    Parameters
    ----------
    quadrature_tolerance : float in (0, 1e-6]

    Returns
    -------
    InteractionConstants
    """
    tol = float(quadrature_tolerance)
    if not 0.0 < tol <= 1e-6:
        raise DomainError(
            f"quadrature tolerance must be in (0, 1e-6], got {tol}"
        )
    cutoff = math.log(100.0 / tol) / SQRT2

    def kinetic_integrand(s):
        d = profile_derivative(s)
        return d * d

    def tail_integrand(x):
        w = heteroclinic(x)
        return np.exp(SQRT2 * x) * (1.0 - w * w) * profile_derivative(x)

    i_kinetic = adaptive_quad(kinetic_integrand, -cutoff, cutoff, tol)
    i_tail = adaptive_quad(tail_integrand, -cutoff, cutoff, tol)
    return InteractionConstants(
        beta=6.0 * i_tail / i_kinetic, i_kinetic=i_kinetic, i_tail=i_tail
    )


def shrinking_sphere(n, t):
    """Radius sqrt(-2(n-1)t) of the collapsing radial front in dimension n.

    Satisfies rho' = -(n-1)/rho exactly. Accepts scalar or array t < 0.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n}")
    t = np.asarray(t, dtype=float)
    if np.any(t >= 0):
        raise DomainError("time must be negative")
    out = np.sqrt(-2.0 * (n - 1) * t)
    return float(out) if out.ndim == 0 else out
