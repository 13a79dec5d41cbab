"""Exception types shared across the library and the CLI."""


class SplitlagError(Exception):
    """Base class for all library errors."""


class InputError(SplitlagError, ValueError):
    """A document or scalar string could not be parsed."""


class PreconditionError(SplitlagError, ValueError):
    """An operation was called on inputs violating its contract."""


class NeatnessError(SplitlagError, RuntimeError):
    """A neat-intersection requirement failed.

    ``certificate`` carries a JSON-serializable payload describing the
    failure (dimensions of the two trace subspaces and, when available,
    the obstruction subspace).
    """

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = certificate or {}
