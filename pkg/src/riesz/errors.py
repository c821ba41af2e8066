"""Exception hierarchy shared by every module."""


class RieszError(Exception):
    """Base class for errors raised by this package."""


class DomainError(RieszError, ValueError):
    """Argument outside the region where the requested quantity is defined."""


class PlannerError(RieszError):
    """Truncation parameters cannot deliver the requested accuracy."""


class PrecisionError(RieszError):
    """Requested precision too low for the numerical scheme."""


class ResourceError(RieszError, MemoryError):
    """Refusing an allocation that is obviously too large."""


class ZeroFormatError(RieszError, ValueError):
    """Malformed line in a zeros file."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ZeroValidationError(RieszError, ValueError):
    """Zeros file parsed but violates ordering or positivity."""


class NearMultipleZeroError(RieszError):
    """|zeta'(rho)| is too small to treat rho as a simple zero."""
