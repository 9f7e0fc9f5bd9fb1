"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`BMatrixError`.
The CLI maps the four top-level families onto distinct exit codes.
"""


class BMatrixError(Exception):
    """Base class for package errors."""


class ParseError(BMatrixError, ValueError):
    """Malformed text input (pattern files, CSV artifacts)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(BMatrixError, ValueError):
    """Input violates a structural contract (duplicates, arity, alphabet)."""


class DimensionError(ValidationError):
    """Length or shape mismatch."""


class PermutationError(ValidationError):
    """Sequence is not a permutation of ``0..n-1``."""


class ContractError(ValidationError):
    """Operation called with a strategy or mode it does not accept."""


class DomainError(BMatrixError, ValueError):
    """Numeric argument outside the operation's domain."""


class SiteIndexError(DomainError, IndexError):
    """Neuron or memory index out of range."""


class InfeasibleError(DomainError):
    """Requested configuration cannot be realised (e.g. m > 2**n)."""
