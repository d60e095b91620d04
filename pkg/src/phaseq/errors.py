"""Exception types shared across the package."""


class PhaseqError(Exception):
    """Base class for package-specific errors."""


class BoundaryLeak(PhaseqError):
    """Too much density or amplitude has reached the edge of a grid."""


class NormDrift(PhaseqError):
    """A unitary evolution lost or gained norm beyond tolerance."""


class GridTooNarrow(PhaseqError):
    """A state does not decay below tolerance at the grid boundary."""


class OriginUndefined(PhaseqError):
    """The phase angle is undefined at the phase-space origin."""


class NonHermitianInput(PhaseqError):
    """A density slice violates Hermitian mirror symmetry."""


class GridMismatch(PhaseqError):
    """Two fields that must share a grid do not."""


class AllZero(PhaseqError):
    """An amplitude field is identically zero."""


class OutOfTruncation(PhaseqError):
    """A requested excitation number exceeds the matrix truncation."""


class DegreeOverflow(PhaseqError):
    """A polynomial operation exceeded the configured maximum degree."""


class DomainError(PhaseqError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(PhaseqError):
    """A configuration file is missing, unreadable, or invalid."""
