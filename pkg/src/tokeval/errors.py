"""Exception types shared across the toolkit."""


class TokevalError(Exception):
    """Base class for all toolkit errors."""


class ConlluParseError(TokevalError):
    """Malformed CoNLL-U input."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class VocabFormatError(TokevalError):
    """Invalid vocabulary file: duplicate token, empty file, or missing UNK."""


class EmptyCorpusError(TokevalError):
    """A per-word metric was requested over a corpus with no words."""


class UndefinedCorrelationError(TokevalError):
    """Correlation undefined: constant series or fewer than two points."""


class ManifestError(TokevalError):
    """Invalid metric/score manifest."""


class RemapError(TokevalError):
    """Remap plan cannot be built, e.g. a special token is missing."""


class HubError(TokevalError):
    """Base class for vocabulary-hub failures."""


class ModelNotFoundError(HubError):
    """The hub has no vocabulary file for the requested model id."""


class IntegrityError(HubError):
    """Downloaded or cached content does not match its digest."""


class HubUnavailableError(HubError):
    """No network and no valid cache entry for the requested model id."""
