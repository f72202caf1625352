"""Exception hierarchy shared by every tcms module."""


class TCMSError(Exception):
    """Base class for data errors raised by tcms."""


class EmptyVocabulary(TCMSError):
    """No term survived preprocessing and document-frequency pruning."""


class UnknownTerm(TCMSError, KeyError):
    """A term outside the trained vocabulary was passed to a weighting function."""

    def __str__(self):
        return Exception.__str__(self)


class DuplicateTerm(TCMSError):
    """A weight matrix handed to the bulk loader repeats or misorders a term."""


class InvalidKPrime(TCMSError, ValueError):
    """Requested shortlist size is outside 1..K."""


class CorpusTooSmall(TCMSError):
    """A corpus cannot be split or trained on (too few classes or documents)."""


class NoClassesFound(TCMSError):
    """A corpus source contained no labeled documents."""


class MissingField(TCMSError):
    """A JSONL record lacks a required string field."""


class TooManyMalformedLines(TCMSError):
    """A JSONL corpus had more malformed lines than the tolerated fraction."""


class ModelFormatError(TCMSError):
    """Base class for problems reading a saved model file."""


class BadMagic(ModelFormatError):
    pass


class VersionUnsupported(ModelFormatError):
    pass


class ChecksumOfCountsMismatch(ModelFormatError):
    pass


class MalformedRow(ModelFormatError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LoaderWarning(UserWarning):
    """Non-fatal problem found while loading a corpus."""
