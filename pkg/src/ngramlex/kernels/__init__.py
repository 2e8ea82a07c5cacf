"""Hot-kernel backend selection.

The numba-compiled backend is used when importable; set
NGRAMLEX_DISABLE_NUMBA=1 to force the pure-numpy fallback (useful for
debugging and for benchmarking one path against the other). Both
backends are importable directly as submodules regardless of the flag.
"""
from __future__ import annotations

import os

from . import numpy_backend

_flag = os.environ.get("NGRAMLEX_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag in {"1", "true", "yes", "on"}

if _disabled:
    _active = numpy_backend
    BACKEND = "numpy"
else:
    try:
        from . import numba_backend as _active  # noqa: F401

        BACKEND = "numba"
    except ImportError:
        _active = numpy_backend
        BACKEND = "numpy"

expected_vocab_sum = _active.expected_vocab_sum
expected_vocab_grid = _active.expected_vocab_grid
zipf_power_sums = _active.zipf_power_sums
build_alias = _active.build_alias
mc_distinct_counts = _active.mc_distinct_counts

__all__ = [
    "BACKEND",
    "build_alias",
    "expected_vocab_grid",
    "expected_vocab_sum",
    "mc_distinct_counts",
    "numpy_backend",
    "zipf_power_sums",
]
