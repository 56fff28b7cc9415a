# -*- coding: utf-8 -*-
"""
柱函数工具单元测试

以 mpmath 扩展精度值为独立参考，检查：
- 八个柱函数在各数值方案分界点两侧的相对精度
- 径向剖面满足 (Δ + kappa) w = 0 及对数奇性
- 对数分解与原点常数
"""

import math
import os
import sys
import unittest

import mpmath
import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.common import DomainError
from src.layerlab.utils.specfun_utils import (
    EULER_GAMMA, cylinder, log_split_profile, profile_origin_constant, radial_profile, radial_profile_ratio
)

ORACLES = {
    "J0": lambda x: mpmath.besselj(0, x), "J1": lambda x: mpmath.besselj(1, x),
    "Y0": lambda x: mpmath.bessely(0, x), "Y1": lambda x: mpmath.bessely(1, x),
    "I0": lambda x: mpmath.besseli(0, x), "I1": lambda x: mpmath.besseli(1, x),
    "K0": lambda x: mpmath.besselk(0, x), "K1": lambda x: mpmath.besselk(1, x),
}


def reference(kind, xs):
    with mpmath.workdps(30):
        return np.array([float(ORACLES[kind](mpmath.mpf(float(x)))) for x in xs])


class TestCylinder(unittest.TestCase):
    """cylinder 测试类"""

    def setUp(self):
        self.grid = np.geomspace(0.1, 10.0, 64)

    def test_order_zero_matches_oracle(self):
        """J0, Y0, I0, K0 在 [0.1, 10] 上相对误差 < 1e-10"""
        for kind in ("J0", "Y0", "I0", "K0"):
            with self.subTest(kind=kind):
                assert_allclose(cylinder(kind, self.grid), reference(kind, self.grid), rtol=1e-10, atol=0)

    def test_order_one_matches_oracle(self):
        for kind in ("J1", "Y1", "I1", "K1"):
            with self.subTest(kind=kind):
                assert_allclose(cylinder(kind, self.grid), reference(kind, self.grid), rtol=1e-10, atol=0)

    def test_crossover_points(self):
        """级数/递推/渐近展开分界点两侧"""
        xs = np.array([1.999, 2.001, 7.999, 8.001, 24.99, 25.01, 40.0])
        for kind in ("J0", "Y0", "K0", "I0"):
            with self.subTest(kind=kind):
                assert_allclose(cylinder(kind, xs), reference(kind, xs), rtol=1e-9, atol=1e-15)

    def test_large_argument_matches_oracle(self):
        """(8, 50] 上误差按 max(|参考值|, 1e-3·包络) 计 < 1e-10"""
        xs = np.concatenate([np.linspace(8.05, 50.0, 97), [25.0]])
        envelope = 1e-3 * np.sqrt(2.0 / (np.pi * xs))
        for kind in ("J0", "Y0", "J1", "Y1", "I0", "I1", "K0", "K1"):
            with self.subTest(kind=kind):
                expected = reference(kind, xs)
                scale = np.maximum(np.abs(expected), envelope) if kind[0] in "JY" else np.abs(expected)
                self.assertLess(np.max(np.abs(cylinder(kind, xs) - expected) / scale), 1e-10)

    def test_scalar_input_returns_float(self):
        value = cylinder("J0", 0.0)
        self.assertIsInstance(value, float)
        self.assertEqual(value, 1.0)
        self.assertEqual(cylinder("J1", 0.0), 0.0)

    def test_domain_errors(self):
        """Y、K 要求 x > 0，J、I 要求 x >= 0"""
        with self.assertRaises(DomainError):
            cylinder("Y0", 0.0)
        with self.assertRaises(DomainError):
            cylinder("K1", np.array([1.0, 0.0]))
        with self.assertRaises(DomainError):
            cylinder("J0", -1.0)
        with self.assertRaises(ValueError):
            cylinder("H0", 1.0)

    def test_wronskian(self):
        """J0·Y1 - J1·Y0 = -2/(πx)"""
        x = np.linspace(0.5, 20.0, 80)
        wronskian = cylinder("J0", x) * cylinder("Y1", x) - cylinder("J1", x) * cylinder("Y0", x)
        assert_allclose(wronskian, -2.0 / (np.pi * x), rtol=0, atol=1e-10)


class TestRadialProfile(unittest.TestCase):
    """径向剖面测试类"""

    def test_ode_residual(self):
        """w'' + w'/r + kappa·w = 0 在 [0.5, 5] 上

        二阶差分的截断误差随 kappa² 增长，容差取 1e-6·max(1, kappa²)。
        """
        r = np.linspace(0.5, 5.0, 46)
        h = 1e-4
        for kappa in (0.0, 1.0, -1.0, 4.0):
            with self.subTest(kappa=kappa):
                w, _ = radial_profile(kappa, r)
                w_plus, _ = radial_profile(kappa, r + h)
                w_minus, _ = radial_profile(kappa, r - h)
                residual = (w_plus - 2 * w + w_minus) / h ** 2 + (w_plus - w_minus) / (2 * h * r) + kappa * w
                self.assertLess(np.max(np.abs(residual)), 1e-6 * max(1.0, kappa ** 2))

    def test_derivative_matches_difference(self):
        r = np.array([0.3, 1.0, 3.0])
        for kappa in (0.0, 2.0, -2.0):
            w_plus, _ = radial_profile(kappa, r + 1e-6)
            w_minus, _ = radial_profile(kappa, r - 1e-6)
            _, dw = radial_profile(kappa, r)
            assert_allclose(dw, (w_plus - w_minus) / 2e-6, rtol=1e-7)

    def test_log_singularity_slope(self):
        """w 对 ln r 的斜率在原点附近趋于 1/2π"""
        for kappa in (0.0, 1.0, -1.0):
            slope = (radial_profile(kappa, 1e-6)[0] - radial_profile(kappa, 1e-8)[0]) / math.log(100.0)
            self.assertAlmostEqual(slope * 2 * math.pi, 1.0, delta=1e-4)

    def test_ratio_helper(self):
        r = np.array([0.5, 2.0])
        w, ratio = radial_profile_ratio(-1.0, r)
        w_ref, dw = radial_profile(-1.0, r)
        assert_allclose(w, w_ref)
        assert_allclose(ratio, dw / r)

    def test_nonpositive_radius(self):
        with self.assertRaises(DomainError):
            radial_profile(0.0, 0.0)


class TestLogSplit(unittest.TestCase):
    """对数分解测试类"""

    def test_split_reconstructs_profile(self):
        """w(ρ) - (1/4π)F(ρ²)ln ρ² 在 ρ -> 0 时趋于 G(0)"""
        for kappa in (1.0, -1.0, 9.0, -0.25):
            rho = 1e-5
            f_val, _ = log_split_profile(kappa, rho ** 2)
            w, _ = radial_profile(kappa, rho)
            smooth = w - f_val * math.log(rho ** 2) / (4 * math.pi)
            self.assertAlmostEqual(smooth, profile_origin_constant(kappa), delta=1e-8)

    def test_origin_limits(self):
        f_val, f_sigma = log_split_profile(4.0, 0.0)
        self.assertEqual(f_val, 1.0)
        self.assertAlmostEqual(f_sigma, -1.0)
        _, f_sigma = log_split_profile(-4.0, np.array([0.0, 1e-3]))
        self.assertAlmostEqual(f_sigma[0], 1.0)
        self.assertEqual(profile_origin_constant(0.0), 0.0)
        self.assertAlmostEqual(profile_origin_constant(4.0), (math.log(1.0) + EULER_GAMMA) / (2 * math.pi))


if __name__ == '__main__':
    unittest.main()
