"""Quadrature on the 3-D rotation group.

Compares the average of a test function against the product measure
m_T1 * m_T2 * m_T1 (three independent uniform Euler angles) with its Haar
average (sin-weighted middle angle); a gap on T1-bi-invariant functions
shows the product of the three torus measures is not Haar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "euler_k1",
    "euler_k2",
    "is_rotation",
    "integrate_product",
    "integrate_haar",
    "Example33Report",
    "example_33_report",
]


def euler_k1(t) -> np.ndarray:
    """Rotation by t about the first axis; vectorized, shape (..., 3, 3)."""
    t = np.asarray(t, dtype=float)
    c, s = np.cos(t), np.sin(t)
    out = np.zeros(t.shape + (3, 3))
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = c
    out[..., 1, 2] = -s
    out[..., 2, 1] = s
    out[..., 2, 2] = c
    return out


def euler_k2(t) -> np.ndarray:
    """Rotation by t about the third axis; vectorized, shape (..., 3, 3)."""
    t = np.asarray(t, dtype=float)
    c, s = np.cos(t), np.sin(t)
    out = np.zeros(t.shape + (3, 3))
    out[..., 0, 0] = c
    out[..., 0, 1] = -s
    out[..., 1, 0] = s
    out[..., 1, 1] = c
    out[..., 2, 2] = 1.0
    return out


def is_rotation(mat: np.ndarray, tol: float = 1e-12) -> bool:
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (3, 3):
        return False
    if np.abs(mat @ mat.T - np.eye(3)).max() >= tol:
        return False
    return abs(np.linalg.det(mat) - 1.0) < tol


def _evaluate(u: Callable, mats: np.ndarray) -> np.ndarray:
    # vectorized call first; per-sample loop for scalar-only test functions
    try:
        vals = np.asarray(u(mats), dtype=float)
        if vals.shape == mats.shape[:-2]:
            return vals
    except Exception:
        pass
    flat = mats.reshape(-1, 3, 3)
    return np.array([float(u(m)) for m in flat]).reshape(mats.shape[:-2])


def _product_grid(angles1: np.ndarray, angles2: np.ndarray, angles3: np.ndarray) -> np.ndarray:
    a = euler_k1(angles1)
    b = euler_k2(angles2)
    c = euler_k1(angles3)
    ab = np.einsum("iuv,jvw->ijuw", a, b)
    return np.einsum("ijuv,kvw->ijkuw", ab, c)


def integrate_product(u: Callable, grid: int = 64) -> float:
    """Mean of u against m_T1 * m_T2 * m_T1: three uniform angles.

    Periodic trapezoid on each axis, which is spectrally accurate for
    trigonometric-polynomial test functions.
    """
    t = 2 * np.pi * np.arange(grid) / grid
    mats = _product_grid(t, t, t)
    return float(_evaluate(u, mats).mean())


def integrate_haar(u: Callable, grid: int = 64) -> float:
    """Haar mean of u: middle angle weighted by sin on [0, pi].

    Outer angles use the periodic trapezoid rule; the middle integral
    uses Gauss-Legendre nodes, exact for the polynomial integrands the
    report panel uses.
    """
    t = 2 * np.pi * np.arange(grid) / grid
    nodes, weights = np.polynomial.legendre.leggauss(grid)
    t2 = (nodes + 1.0) * (np.pi / 2)
    w2 = weights * (np.pi / 2) * np.sin(t2)
    mats = _product_grid(t, t2, t)
    vals = _evaluate(u, mats)
    # average outer axes, then weighted middle integral over half the mass
    inner = vals.mean(axis=(0, 2))
    return float((inner * w2).sum() / 2.0)


@dataclass(frozen=True)
class Example33Report:
    grid: int
    panel: tuple[tuple[str, float, float, float], ...]
    normalization_product: float
    normalization_haar: float
    max_delta: float
    separated: bool


def example_33_report(grid: int = 64) -> Example33Report:
    """Discrepancy panel on T1-bi-invariant test functions.

    The entries g11, g11^2, g11^3 depend only on the middle Euler angle;
    the squared entry separates the product measure (mean 1/2) from Haar
    (mean 1/3), proving the two measures differ.
    """
    panel_fns = (
        ("g11", lambda m: m[..., 0, 0]),
        ("g11^2", lambda m: m[..., 0, 0] ** 2),
        ("g11^3", lambda m: m[..., 0, 0] ** 3),
    )
    rows = []
    for name, fn in panel_fns:
        p = integrate_product(fn, grid)
        h = integrate_haar(fn, grid)
        rows.append((name, p, h, p - h))
    one = lambda m: np.ones(m.shape[:-2])
    np_ = integrate_product(one, grid)
    nh = integrate_haar(one, grid)
    max_delta = max(abs(r[3]) for r in rows)
    return Example33Report(
        grid, tuple(rows), np_, nh, max_delta, separated=max_delta > 0.1
    )
