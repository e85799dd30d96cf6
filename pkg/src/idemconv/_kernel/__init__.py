"""Convolution kernel dispatch.

The compiled backend (Cython, int64) is used when it imported cleanly, the
IDEMCONV_PURE environment variable is unset, and a conservative magnitude
bound shows no intermediate can reach 2**62.  Otherwise the pure big-int
backend runs; both produce identical integer rows.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _pykernel

try:
    from . import _cykernel  # type: ignore[attr-defined]

    HAS_COMPILED = True
except ImportError:  # no compiler at install time
    _cykernel = None
    HAS_COMPILED = False

FORCE_PURE = os.environ.get("IDEMCONV_PURE", "") not in ("", "0")

# headroom below 2**63-1 so the bound stays safe even if off by a small factor
_I64_LIMIT = 2**62

__all__ = ["HAS_COMPILED", "FORCE_PURE", "backend_name", "convolve_exact"]


def backend_name() -> str:
    return "compiled" if (HAS_COMPILED and not FORCE_PURE) else "pure"


def _fits_int64(a_rows: Sequence[Sequence[int]], b_rows: Sequence[Sequence[int]],
                d: int, red_max: int) -> bool:
    max_a = max((abs(c) for row in a_rows for c in row), default=0)
    max_b = max((abs(c) for row in b_rows for c in row), default=0)
    if max_a == 0 or max_b == 0:
        return True
    nnz = min(
        sum(1 for row in a_rows if any(row)),
        sum(1 for row in b_rows if any(row)),
    )
    acc_bound = nnz * d * max_a * max_b
    out_bound = acc_bound * (2 * d) * max(1, red_max)
    return out_bound < _I64_LIMIT


def convolve_exact(
    mul_rows: Sequence[Sequence[int]],
    mul_np: "np.ndarray",
    a_rows: Sequence[Sequence[int]],
    b_rows: Sequence[Sequence[int]],
    red_rows: Sequence[Sequence[int]],
    red_max: int,
) -> list[list[int]]:
    """Exact group-algebra convolution of packed numerator matrices.

    Entry [g][j] of a_rows is the j-th power-basis coordinate of the
    numerator at group element g; red_rows[j] expresses x^j in the basis
    for j < 2d-1.  Returns n rows of d integers.
    """
    d = len(red_rows[0])
    if HAS_COMPILED and not FORCE_PURE and _fits_int64(a_rows, b_rows, d, red_max):
        n = len(mul_rows)
        a = np.array(a_rows, dtype=np.int64).reshape(n, d)
        b = np.array(b_rows, dtype=np.int64).reshape(n, d)
        red = np.array(red_rows, dtype=np.int64).reshape(2 * d - 1, d)
        a_nz = np.ascontiguousarray(a.any(axis=1).astype(np.int64))
        b_nz = np.ascontiguousarray(b.any(axis=1).astype(np.int64))
        acc = np.zeros((n, 2 * d - 1), dtype=np.int64)
        out = np.zeros((n, d), dtype=np.int64)
        _cykernel.convolve(mul_np, a, b, a_nz, b_nz, red, acc, out)
        return out.tolist()
    return _pykernel.convolve_exact(mul_rows, a_rows, b_rows, red_rows)
