"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class BlowUpError(RuntimeError):
    """A trajectory diverged before the requested end time.

    ``time`` is the detected divergence time; ``bracket`` is the last pair
    of times known to straddle it.
    """

    def __init__(self, message, time, bracket=None):
        super().__init__(message)
        self.time = time
        self.bracket = bracket


class GradientCatastrophe(RuntimeError):
    """The slope of a wavefront diverges at ``time`` (position ``position``)."""

    def __init__(self, message, time=None, position=None):
        super().__init__(message)
        self.time = time
        self.position = position


class SolverFailure(RuntimeError):
    """The finite-volume solver produced a non-finite or negative depth."""

    def __init__(self, message, time=None, step=None):
        super().__init__(message)
        self.time = time
        self.step = step


class ConfigError(ValueError):
    """A scenario configuration failed validation.

    ``errors`` holds every violation found, as ``"location: message"``
    strings.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
