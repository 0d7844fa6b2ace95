"""Exception types shared across the package."""


class OrbitloomError(Exception):
    """Base class for all orbitloom errors."""


class InvalidParamError(OrbitloomError, ValueError):
    """A parameter is outside its documented domain."""


class EmptyCurveError(OrbitloomError):
    """Operation needs at least one circular component."""


class NonPeriodicError(OrbitloomError):
    """The curve has no common period."""


class NonCommensurableError(NonPeriodicError):
    """Frequency ratios are not exact rationals.

    Raised when a curve carries float frequencies (e.g. raw orbital periods
    that were never rationalized), so no exact period or symmetry order
    exists.  Subclasses NonPeriodicError: every non-commensurable curve is
    non-periodic.
    """


class EmptyInputError(OrbitloomError):
    """A writer was handed nothing to write."""


class EmptyMeshError(OrbitloomError):
    """A mesh writer was handed a mesh with no triangles."""


class DegenerateFrameError(OrbitloomError):
    """Consecutive tube-spine samples coincide; no moving frame exists."""
