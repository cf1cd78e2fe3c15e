"""Exception types shared across the library."""


class NilcoverError(Exception):
    """Base class for all library errors."""


class DomainError(NilcoverError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoSolutionError(NilcoverError, RuntimeError):
    """A numerical solve found no admissible root."""


class DegenerateLatticeError(NilcoverError, ValueError):
    """Lattice basis with vanishing projected area; no discrete lattice."""


class DegenerateGeometryError(NilcoverError, ValueError):
    """Input points are in special position and the solve cannot proceed."""
