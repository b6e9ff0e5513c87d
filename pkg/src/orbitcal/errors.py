"""Shared exception types with a stable mapping to CLI exit codes."""


class PreconditionError(ValueError):
    """A decision was requested outside its hypotheses (e.g. zero base vector)."""


class ResourceLimitError(RuntimeError):
    """A computation exceeded its configured size threshold."""


class InconsistentDataError(ValueError):
    """Exact input data produced a value that cannot be correct (e.g. a
    degree formula evaluating to a non-integer or a nonpositive number)."""


class CertificateError(RuntimeError):
    """An internally produced certificate failed its plug-back check."""
