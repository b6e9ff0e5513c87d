"""Kernel backend selection.

The compiled extension is used when it has been built; setting
ORBITCAL_PURE=1 in the environment forces the pure-Python fallback
(useful for debugging and for the benchmark baseline).
"""

import os

if os.environ.get("ORBITCAL_PURE"):
    from orbitcal._kernels.pure import add_scaled_inplace, term_times_into, terms_mul

    BACKEND = "pure"
else:
    try:
        from orbitcal._kernels._speed import (  # type: ignore[no-redef]
            add_scaled_inplace,
            term_times_into,
            terms_mul,
        )

        BACKEND = "compiled"
    except ImportError:
        from orbitcal._kernels.pure import (  # type: ignore[no-redef]
            add_scaled_inplace,
            term_times_into,
            terms_mul,
        )

        BACKEND = "pure"

__all__ = ["BACKEND", "add_scaled_inplace", "terms_mul", "term_times_into"]
