"""Kernel backend selection.

The hot enumeration and sweep loops exist twice: a Cython extension
(``_speedups``) and a NumPy implementation (``_fallback``).  The compiled
backend is preferred when it was built; set ``GENEGEO_NO_SPEEDUPS=1`` to
force the NumPy path.  ``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

from .common import OUTCOME_ORDER, BitSweepResult, RealSweepResult
from . import _fallback

if os.environ.get("GENEGEO_NO_SPEEDUPS"):
    _impl = _fallback
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND
census_bits = _impl.census_bits
bit_sweep = _impl.bit_sweep
real_sweep = _impl.real_sweep


def available_backends() -> dict:
    """All importable kernel implementations, keyed by backend name."""
    backends = {_fallback.BACKEND: _fallback}
    try:
        from . import _speedups

        backends[_speedups.BACKEND] = _speedups
    except ImportError:
        pass
    return backends


__all__ = [
    "BACKEND",
    "OUTCOME_ORDER",
    "BitSweepResult",
    "RealSweepResult",
    "available_backends",
    "bit_sweep",
    "census_bits",
    "real_sweep",
]
