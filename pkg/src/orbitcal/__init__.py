"""orbitcal: exact orbit-closure membership for parametrized linear
group actions, with two independent decision procedures (linear-system
consistency with certificates, and Groebner elimination) plus a
combinatorial torus criterion."""

__version__ = "0.1.0"

from orbitcal.errors import (
    CertificateError,
    InconsistentDataError,
    PreconditionError,
    ResourceLimitError,
)

__all__ = [
    "__version__",
    "CertificateError",
    "InconsistentDataError",
    "PreconditionError",
    "ResourceLimitError",
]
