"""Rotation-group quadrature: product measure vs Haar."""

import math

import numpy as np
import pytest

from idemconv.so3 import (
    euler_k1,
    euler_k2,
    example_33_report,
    integrate_haar,
    integrate_product,
    is_rotation,
)


def g11(mats):
    return mats[..., 0, 0]


def g11_sq(mats):
    return mats[..., 0, 0] ** 2


def test_euler_factories_are_rotations():
    ts = np.linspace(0.0, 2 * math.pi, 17)
    for t in ts:
        assert is_rotation(euler_k1(t))
        assert is_rotation(euler_k2(t))


def test_one_parameter_subgroup_law():
    a, b = 0.7, 1.9
    assert np.allclose(euler_k1(a) @ euler_k1(b), euler_k1(a + b), atol=1e-12)
    assert np.allclose(euler_k2(a) @ euler_k2(b), euler_k2(a + b), atol=1e-12)
    assert np.allclose(euler_k1(0.0), np.eye(3), atol=1e-15)


def test_k1_k2_do_not_commute():
    a = euler_k1(1.0) @ euler_k2(1.0)
    b = euler_k2(1.0) @ euler_k1(1.0)
    assert not np.allclose(a, b, atol=1e-3)


def test_product_integral_oracles():
    # g11 of k1(t1) k2(t2) k1(t3) is cos(t2), so the triple average picks
    # out moments of the cosine: mean 0, mean square 1/2, mean cube 0
    assert integrate_product(g11, grid=48) == pytest.approx(0.0, abs=1e-9)
    assert integrate_product(g11_sq, grid=48) == pytest.approx(0.5, abs=1e-9)
    assert integrate_product(lambda m: g11(m) ** 3, grid=48) == pytest.approx(
        0.0, abs=1e-9
    )


def test_haar_integral_oracles():
    # under Haar the matrix entry is a coordinate of a uniform frame:
    # odd moments vanish and the second moment is 1/3
    assert integrate_haar(g11, grid=48) == pytest.approx(0.0, abs=1e-9)
    assert integrate_haar(g11_sq, grid=48) == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert integrate_haar(lambda m: g11(m) ** 3, grid=48) == pytest.approx(
        0.0, abs=1e-9
    )


def test_normalization():
    ones = lambda m: np.ones(m.shape[:-2])
    assert integrate_product(ones, grid=24) == pytest.approx(1.0, abs=1e-12)
    assert integrate_haar(ones, grid=24) == pytest.approx(1.0, abs=1e-12)


def test_grid_convergence():
    coarse = integrate_haar(g11_sq, grid=24)
    fine = integrate_haar(g11_sq, grid=96)
    assert abs(coarse - fine) < 1e-9


def test_non_vectorized_integrand_accepted():
    val = integrate_product(lambda m: float(m[0, 0]) ** 2, grid=24)
    assert val == pytest.approx(0.5, abs=1e-9)


def test_example_33_report():
    rep = example_33_report(grid=48)
    assert rep.normalization_product == pytest.approx(1.0, abs=1e-12)
    assert rep.normalization_haar == pytest.approx(1.0, abs=1e-12)
    assert rep.max_delta == pytest.approx(1.0 / 6.0, abs=1e-6)
    assert rep.separated
    # panel rows expose (product, haar) per test function
    assert len(rep.panel) == 3
