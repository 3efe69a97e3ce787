"""Exception types shared across the package."""


class StopkitError(Exception):
    """Base class for all domain errors raised by this package."""


class CorpusError(StopkitError):
    """Corpus file is missing, malformed, or unreadable."""


class SessionError(StopkitError):
    """Review session is malformed or an operation violates its contract."""


class ListFormatError(StopkitError):
    """A stopword list or pos-map file failed validation."""


class EvalError(StopkitError):
    """Evaluation dataset or feature matrix is degenerate."""
