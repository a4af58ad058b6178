"""Exception hierarchy shared by all kgspec modules."""


class KGSpecError(Exception):
    """Base class for every error raised by kgspec."""


class PoleError(KGSpecError):
    """Gamma function evaluated at (or within 1e-12 of) a non-positive integer."""


class ParameterError(KGSpecError, ValueError):
    """Parameters outside the domain of a closed-form expression."""


class DomainError(KGSpecError, ValueError):
    """Coordinate or argument outside the validity domain."""


class NonConvergence(KGSpecError, ArithmeticError):
    """An iterative procedure failed to reach its tolerance."""


class BranchError(KGSpecError):
    """No real superpotential exists (negative discriminant)."""


class DegenerateError(KGSpecError):
    """A shape-invariance parameter rho vanished."""


class InvariantError(KGSpecError):
    """A solved state violates a structural invariant."""


class BelowThreshold(KGSpecError, ValueError):
    """Energy lies inside the gap where no scattering solution exists."""


class GridError(KGSpecError, ValueError):
    """Radial grid violates its invariants."""


class MatchError(KGSpecError):
    """Asymptotic matching at two radii gave inconsistent phase shifts."""


class ConfigError(KGSpecError, ValueError):
    """Malformed run configuration."""
