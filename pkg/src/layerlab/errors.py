"""Exception types shared across the package.

Every error raised by layerlab derives from LayerlabError, so callers can
catch the package's failures without also swallowing programming errors.
"""


class LayerlabError(Exception):
    """Base class for all layerlab errors."""


class DomainError(LayerlabError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class ConfigError(LayerlabError, ValueError):
    """A configuration file or value failed validation; names the field."""


class NonConvergence(LayerlabError):
    """An iterative routine exhausted its budget before meeting tolerance."""


class StepFailure(LayerlabError):
    """An adaptive integrator drove the step size below a usable floor."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class OrderingViolation(LayerlabError):
    """Layer radii are not strictly increasing where they must be."""


class CollisionError(LayerlabError):
    """Two layers came closer than the collision threshold during a run.

    Carries the time of the collision and the partial trajectory computed
    up to that point, so callers can report instead of losing the run.
    """

    def __init__(self, message, t=None, partial=None):
        super().__init__(message)
        self.t = t
        self.partial = partial


class EigenFailure(LayerlabError):
    """An eigendecomposition did not converge."""


class LinAlgFailure(LayerlabError):
    """A linear solve failed (singular or badly scaled system)."""


class NoContraction(LayerlabError):
    """Fixed-point iteration changes stopped decreasing geometrically.

    Carries the per-iteration change norms observed before giving up.
    """

    def __init__(self, message, changes=None):
        super().__init__(message)
        self.changes = list(changes) if changes is not None else []


class InterfaceLost(LayerlabError):
    """Fewer zero crossings than expected in a field.

    Carries the time stamp of the offending snapshot when known.
    """

    def __init__(self, message, t=None, found=None):
        super().__init__(message)
        self.t = t
        self.found = found


class SpuriousInterface(LayerlabError):
    """More zero crossings than expected in a field."""

    def __init__(self, message, t=None, found=None):
        super().__init__(message)
        self.t = t
        self.found = found


class WindowTooShort(LayerlabError):
    """A fit window does not span enough decades to be meaningful."""


class WindowMismatch(LayerlabError):
    """Two tracks do not overlap in time, so they cannot be compared."""


class GridMismatch(LayerlabError):
    """Two runs cannot be compared on common points (incompatible grids
    or sample times)."""


class SchemaMismatch(LayerlabError):
    """Two reports disagree structurally (keys or shapes), not numerically."""
