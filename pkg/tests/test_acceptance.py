"""Acceptance criteria.

One test per criterion, so `pytest -v` prints exactly one pass/fail line for
each.  Every numeric target is pinned here at its stated tolerance; wall-time
bounds are asserted where the criterion carries one.  Shared fixtures run
once per session and are reused across criteria.
"""

import time
from fractions import Fraction

import pytest

from idemconv.suite import SuiteConfig, run_fixture

_CACHE: dict[str, tuple[object, float]] = {}


def fixture_result(name: str, cfg: SuiteConfig = SuiteConfig()):
    """Run a registry fixture once, remembering its wall time."""
    if name not in _CACHE:
        t0 = time.perf_counter()
        res = run_fixture(name, cfg)
        _CACHE[name] = (res, time.perf_counter() - t0)
    return _CACHE[name]


def test_criterion_01_commutation_sweep_matches_brute_force():
    """All ordered (K, rho) pairs of S3, S4, D4, Q8 classify correctly."""
    res, elapsed = fixture_result("commute-oracle-sweep")
    assert res.passed, res.details
    g = res.details["groups"]
    assert g["S3"] == {
        "items": 12, "ordered_pairs": 144,
        "commute": 62, "zero_product": 34, "non_commuting": 48,
    }
    assert g["S4"] == {
        "items": 84, "ordered_pairs": 7056,
        "commute": 1454, "zero_product": 1774, "non_commuting": 3828,
    }
    assert g["D4"] == {
        "items": 27, "ordered_pairs": 729,
        "commute": 335, "zero_product": 274, "non_commuting": 120,
    }
    assert g["Q8"] == {
        "items": 19, "ordered_pairs": 361,
        "commute": 135, "zero_product": 202, "non_commuting": 24,
    }
    assert elapsed < 60.0
    print(f"criterion 1: 8290 ordered pairs classified in {elapsed:.2f}s")


def test_criterion_02_s5_stabilizer_against_five_cycle():
    """Point stabilizer vs <(12345)>: eight twisted pairs refuse to commute."""
    res, _ = fixture_result("example-2.4ii")
    assert res.passed, res.details
    assert res.details["stabilizer_order"] == 24
    assert res.details["non_commuting"] == 8
    cases = res.details["cases"]
    assert len(cases) == 9
    assert all(kind == "non_commuting" for _, _, kind in cases[:8])
    assert cases[8] == ["trivial", "trivial", "commute"]
    print("criterion 2: 8 non-commuting pairs + trivial pair commutes")


def test_criterion_03_alternating_power_limits():
    """Exhaustive factor-pair limits on S3 and D4 at tol 1e-9 within 500."""
    res, _ = fixture_result("limit-sweep")
    assert res.passed, res.details
    d = res.details
    assert d["S3"] == {"ordered_pairs": 144, "limit": 74, "zero_limit": 70,
                       "max_iterations": 69}
    assert d["D4"] == {"ordered_pairs": 729, "limit": 367, "zero_limit": 362,
                       "max_iterations": 28}
    assert d["showcase"]["signed_full_limit"]
    assert d["showcase"]["zero_limit"]
    print("criterion 3: 873 factor pairs converged or vanished, max 69 steps")


def test_criterion_04_cyclic_two_point_dichotomy():
    """Symmetric two-point supports on C_n, n <= 12, plus exact C4 cycling."""
    res, _ = fixture_result("stromberg-cyclic")
    assert res.passed, res.details
    d = res.details
    assert d["per_n"] == [[2, 1], [3, 1], [4, 2], [5, 2], [6, 3], [7, 3],
                          [8, 4], [9, 4], [10, 5], [11, 5], [12, 6]]
    assert d["converges"] == 25
    assert d["obstructed"] == 11
    assert d["c4_period_two"]
    print("criterion 4: 36 cyclic walks split 25 converge / 11 obstructed")


def test_criterion_05_free_product_decay():
    """C2 * C3 alternating walk: exact maxima strictly decrease below 0.1."""
    res, elapsed = fixture_result("free-product-c2c3")
    assert res.passed, res.details
    d = res.details
    assert d["strictly_decreasing"]
    assert d["below_eps_at"] == 3
    assert d["exact_max_by_power"] == [
        "1/6", "1/9", "1/12", "43/648", "71/1296", "1081/23328",
        "1861/46656", "29219/839808",
    ]
    assert d["support_by_power"] == [6, 18, 42, 90, 186, 378, 762, 1530]
    assert Fraction(d["exact_max_by_power"][-1]) < Fraction(1, 10)
    assert elapsed < 30.0
    print(f"criterion 5: decay to {d['max_by_power'][-1]:.4f} in {elapsed:.2f}s")


def test_criterion_06_invariance_groups_and_spans():
    """Dual invariance-group definitions agree; torus example is proper."""
    res, _ = fixture_result("measure-group-sweep")
    assert res.passed, res.details
    g = res.details["groups"]
    assert g["S3"] == {"pairs": 12, "gamma_order_sum": 42}
    assert g["S4"] == {"pairs": 84, "gamma_order_sum": 600}
    assert g["D4"] == {"pairs": 27, "gamma_order_sum": 160}
    assert g["Q8"] == {"pairs": 19, "gamma_order_sum": 128}

    res_i, _ = fixture_result("example-4.4i")
    assert res_i.passed, res_i.details
    assert res_i.details == {
        "k12_order": 4, "h1_order": 4, "h2_order": 4, "span_order": 4,
        "gamma_order": 4, "proper_inclusion": False,
        "forward": [16, 32], "reverse_realized": 4,
    }

    res_ii, _ = fixture_result("example-4.4ii")
    assert res_ii.passed, res_ii.details
    assert res_ii.details == {
        "k12_order": 120, "h1_order": 24, "h2_order": 20, "span_order": 120,
        "gamma_order": 120, "proper_inclusion": False,
        "forward": [480, 480], "reverse_realized": 120,
    }

    res_iii, _ = fixture_result("example-4.4iii")
    assert res_iii.passed, res_iii.details
    assert res_iii.details == {
        "torus_order": 9, "gamma_k1_order": 9, "gamma_k2_order": 9,
        "span_order": 9, "gamma_order": 18, "proper_inclusion": True,
        "forward": [81, 81], "reverse_realized": 9,
    }
    print("criterion 6: 142 invariance groups agree; span 9 inside gamma 18")


def test_criterion_07_local_unitaries():
    """nu_u reproduces its unit data, multiplies pointwise, is unitary."""
    res, _ = fixture_result("local-unitaries")
    assert res.passed, res.details
    g = res.details["groups"]
    for name, n_chars in (("C4", 4), ("C2xC3", 6)):
        assert g[name]["characters"] == n_chars
        assert g[name]["pointwise_product_law"]
        assert g[name]["unitary_at_identity"]
    print("criterion 7: unit data round-trips on C4 and C2xC3, exactly")


def test_criterion_08_skew_exponentials():
    """exp of 20 random skew-adjoint elements per group is unitary."""
    res, _ = fixture_result("skew-exponentials")
    assert res.passed, res.details
    g = res.details["groups"]
    assert g["C3"]["samples"] == 20
    assert g["S3"]["samples"] == 20
    assert g["C3"]["worst_unitarity_residual"] < 1e-9
    assert g["S3"]["worst_unitarity_residual"] < 1e-9
    assert g["C3"]["worst_oracle_distance"] < 1e-9
    print("criterion 8: worst unitarity residual "
          f"{max(g['C3']['worst_unitarity_residual'], g['S3']['worst_unitarity_residual']):.1e}")


def test_criterion_09_rotation_group_separation():
    """Triple-product measure vs Haar on the rotation group at grid 64."""
    res, elapsed = fixture_result("example-3.3")
    assert res.passed, res.details
    d = res.details
    assert d["grid"] == 64
    panel = {row[0]: row for row in d["panel"]}
    assert panel["g11^2"][1] == pytest.approx(0.5, abs=1e-6)
    assert panel["g11^2"][2] == pytest.approx(1 / 3, abs=1e-6)
    assert d["max_delta"] == pytest.approx(1 / 6, abs=1e-6)
    assert d["normalization_product"] == pytest.approx(1.0, abs=1e-12)
    assert d["normalization_haar"] == pytest.approx(1.0, abs=1e-12)
    assert d["separated"]
    assert elapsed < 10.0
    print(f"criterion 9: 0.5 vs 1/3 separated by {d['max_delta']:.6f} "
          f"in {elapsed:.2f}s")


def test_criterion_10_structural_identities():
    """Averaging, factorization bijection, self-adjointness, orthogonality."""
    res, _ = fixture_result("structural-invariants")
    assert res.passed, res.details
    checks = res.details["checks"]
    assert checks == {
        "averaging": 217,
        "coset_bijection": 668,
        "self_adjoint": 142,
        "orthogonal": 150,
    }
    print("criterion 10: 1177 exact identities verified")
