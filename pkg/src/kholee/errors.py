"""Exception hierarchy for kholee."""


class KholeeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(KholeeError):
    """Malformed user input (braid text, movie script, PD code, CLI args)."""


class DiagramTooLargeError(InputError):
    """Crossing count exceeds the configured safety limit."""


class NotACycleError(KholeeError):
    """A chain expected to be a cycle has nonzero differential."""


class ZeroClassError(KholeeError):
    """Filtration grading requested for a class that is zero in homology."""


class UnsupportedMoveError(KholeeError):
    """A movie move whose chain map is outside the scope of this engine."""


class IntegrityError(KholeeError):
    """An internal consistency check failed (d^2 != 0, inhomogeneous map, ...)."""
