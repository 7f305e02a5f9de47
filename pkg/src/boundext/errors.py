"""Exception types shared by the library and the command line."""

__all__ = ["SchemaError", "CapabilityError", "CertificateError", "InconsistencyError", "DomainError"]


class SchemaError(ValueError):
    """Malformed structured-text input."""


class CapabilityError(RuntimeError):
    """The requested construction is beyond what the inputs allow."""


class CertificateError(CapabilityError):
    """A required certificate (e.g. non-vanishing derivative) could not be produced."""


class InconsistencyError(RuntimeError):
    """Accepted configurations disagree; the input approximations are invalid."""


class DomainError(ValueError):
    """A point approximation does not approximate a point where it should."""
