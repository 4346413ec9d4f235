"""Extended-precision helpers.

Everything in the package computes in binary64 by default.  Decisions whose
float margin falls below :data:`FLOAT_MARGIN` are re-evaluated with mpmath at
``precision_bits()`` bits (``ABC_PRECISION_BITS`` overrides the default).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import mpmath
from mpmath import mp

DEFAULT_PRECISION_BITS = 128
# Comparisons closer than this (absolute) are re-done in extended precision.
FLOAT_MARGIN = 1e-9


def precision_bits() -> int:
    raw = os.environ.get("ABC_PRECISION_BITS")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 100:
        raise ValueError("ABC_PRECISION_BITS must be at least 100")
    return bits


@contextmanager
def extended():
    """Run the enclosed block with mpmath at the configured precision."""
    with mp.workprec(precision_bits()):
        yield


def mpf_f(a, b):
    """Edge contribution f(a, b) as an mpf; call inside :func:`extended`."""
    a = mp.mpf(a)
    b = mp.mpf(b)
    return mp.sqrt((a + b - 2) / (a * b))


def mpf_f_inf(a):
    """Limit of f(a, d) as d grows without bound."""
    return mp.sqrt(1 / mp.mpf(a))


def tie_tolerance(scale) -> mpmath.mpf:
    """Two extended-precision values closer than this count as equal."""
    return mp.mpf(2) ** (-(precision_bits() - 24)) * max(mp.mpf(1), abs(scale))
