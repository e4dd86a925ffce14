class InteractionBoundsError(Exception):
    """Base class for every domain failure.  ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ModelFormatError(InteractionBoundsError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None):
        if line is not None:
            message = f"Line {line}. {message}"
        super().__init__(message)
        self.line = line


class UnsatisfiableModelError(InteractionBoundsError):
    exit_code = 3


class IncompleteAssignmentError(InteractionBoundsError, ValueError):
    pass


class OracleTimeoutError(InteractionBoundsError, RuntimeError):
    pass


class EncodingError(InteractionBoundsError, ValueError):
    pass


class CertificateError(InteractionBoundsError):
    exit_code = 4

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ArtifactMismatchError(CertificateError):
    exit_code = 5


class CoverageGapError(CertificateError):
    exit_code = 6


class InvalidConfigurationError(CertificateError):
    exit_code = 7


class MutexViolationError(CertificateError):
    exit_code = 8
