"""Exception types shared across the package."""


class GaznerError(Exception):
    """Base class for all package errors."""


class CorpusParseError(GaznerError):
    """A corpus / gazetteer / embedding / parse file line could not be parsed."""


class ValidationError(GaznerError):
    """A record parsed but violates a data invariant (e.g. span out of bounds)."""


class ContractViolation(GaznerError):
    """A caller violated a documented precondition."""


class ConfigurationError(GaznerError):
    """A requested configuration is inconsistent or missing a resource."""


class TrainingError(GaznerError):
    """Training input is unusable (e.g. a single class)."""


class ModelFormatError(GaznerError):
    """A model file is malformed, truncated, or of an unsupported version."""
