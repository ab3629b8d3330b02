"""Exception types shared by the library and mapped to CLI exit codes."""


class DiracKitError(Exception):
    """Base class for every error raised by dirackit."""

    exit_code = 2


class ConfigurationError(DiracKitError):
    """Unsupported root family, rank, or malformed pair description."""


class UsageError(DiracKitError):
    """An operation was called outside its domain."""


class ShapeError(UsageError):
    """Weights or matrices of incompatible rank were combined."""


class SingularPointError(DiracKitError):
    """A character denominator vanishes at the requested torus point."""

    exit_code = 3


class ResourceError(DiracKitError):
    """An exhaustive enumeration would exceed the configured size cap."""

    exit_code = 4
