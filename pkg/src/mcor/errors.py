"""Exception hierarchy shared by the library and the CLI."""


class MiningError(Exception):
    """Base class for every error raised by :mod:`mcor`."""


class ParameterError(MiningError, ValueError):
    """A caller-supplied parameter violates its contract (exit code 2)."""


class FormatError(MiningError, ValueError):
    """Input text does not follow the declared file format."""


class InputError(MiningError, OSError):
    """The input stream could not be read or decoded (exit code 1)."""
