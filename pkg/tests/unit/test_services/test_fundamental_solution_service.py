# -*- coding: utf-8 -*-
"""
FundamentalSolutionService 单元测试

测试基本解的构造、求值与对数分解，包括：
- 剖面类型的选择与复 kappa 的拒绝
- Laplace 与各向异性算子的闭式值
- P[a,D] S_a = 0（原点以外，有限差分）
- 梯度与差分一致、对数分解的连续性
"""

import math
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.common import DomainError, UnsupportedKappaError
from src.layerlab.models.operator_models import ProfileTag
from src.layerlab.services.potential.boundary_geometry_service import BoundaryGeometryService
from src.layerlab.services.potential.fundamental_solution_service import FundamentalSolutionService
from src.layerlab.services.potential.operator_reduction_service import OperatorReductionService

TEST_OPERATORS = {
    "laplace": (np.eye(2), [0.0, 0.0], 0.0),
    "helmholtz": (np.eye(2), [0.0, 0.0], 1.0),
    "yukawa": (np.eye(2), [0.0, 0.0], -1.0),
    "anisotropic": ([[4.0, 0.0], [0.0, 1.0]], [0.0, 0.0], 0.0),
    "drift": (np.eye(2), [2.0, 0.0], 1.0),
}


class TestFundamentalSolutionService(unittest.TestCase):
    """FundamentalSolutionService 测试类"""

    def setUp(self):
        """测试前置设置"""
        self.reduction = OperatorReductionService()
        self.service = FundamentalSolutionService(reduction_service=self.reduction)
        self.geometry = BoundaryGeometryService()

    def tearDown(self):
        """测试后清理"""
        self.service = None

    def _build(self, name):
        a2, a1, a0 = TEST_OPERATORS[name]
        coeffs = self.reduction.validate(a2, a1, a0)
        return coeffs, self.service.build(coeffs)

    def test_profile_selection(self):
        """kappa 的符号决定剖面类型"""
        expected = {
            "laplace": ProfileTag.LOG, "helmholtz": ProfileTag.OSCILLATORY, "yukawa": ProfileTag.DECAYING,
            "anisotropic": ProfileTag.LOG, "drift": ProfileTag.LOG,
        }
        for name, tag in expected.items():
            with self.subTest(operator=name):
                self.assertEqual(self._build(name)[1].profile.tag, tag)

    def test_complex_kappa_rejected(self):
        coeffs = self.reduction.validate(np.eye(2), [0.0, 0.0], 1j)
        with self.assertRaises(UnsupportedKappaError):
            self.service.build(coeffs)

    def test_laplace_closed_form(self):
        """S(x) = ln|x| / 2π"""
        _, fs = self._build("laplace")
        self.assertAlmostEqual(self.service.evaluate(fs, [1.0, 0.0]).real, 0.0)
        self.assertAlmostEqual(self.service.evaluate(fs, [0.0, 2.0]).real, math.log(2.0) / (2 * math.pi))
        assert_allclose(self.service.gradient(fs, [2.0, 0.0]), [1.0 / (4 * math.pi), 0.0], atol=1e-15)

    def test_gradient_of_single_point(self):
        """单个二维向量的梯度形状为 (2,)，与批量求值一致"""
        for name in TEST_OPERATORS:
            with self.subTest(operator=name):
                _, fs = self._build(name)
                single = self.service.gradient(fs, [1.0, 0.0])
                self.assertEqual(np.shape(single), (2,))
                assert_allclose(single, self.service.gradient_many(fs, [[1.0, 0.0]])[0], rtol=1e-14)

    def test_anisotropic_closed_form(self):
        """a2 = diag(4, 1): S(x) = (1/2)·ln|(x1/2, x2)| / 2π"""
        _, fs = self._build("anisotropic")
        self.assertAlmostEqual(self.service.evaluate(fs, [2.0, 0.0]).real, 0.0)
        expected = 0.5 * math.log(math.hypot(0.5, 1.0)) / (2 * math.pi)
        self.assertAlmostEqual(self.service.evaluate(fs, [1.0, 1.0]).real, expected)

    def test_origin_is_excluded(self):
        _, fs = self._build("helmholtz")
        with self.assertRaises(DomainError):
            self.service.evaluate(fs, [0.0, 0.0])
        with self.assertRaises(DomainError):
            self.service.evaluate_many(fs, np.array([[1.0, 0.0], [0.0, 0.0]]))

    def test_satisfies_pde_away_from_origin(self):
        """P[a,D] S_a ≈ 0，二阶差分误差 O(h²)"""
        points = np.array([[0.7, 0.4], [-0.5, 1.1], [1.5, -0.3]])
        for name in TEST_OPERATORS:
            with self.subTest(operator=name):
                coeffs, fs = self._build(name)
                residual = self.reduction.apply_pde(
                    coeffs, lambda p: self.service.evaluate_many(fs, p), points, h=1e-3)
                self.assertLess(np.max(np.abs(residual)), 1e-4)

    def test_gradient_matches_difference(self):
        x = np.array([0.6, -0.8])
        h = 1e-6
        for name in TEST_OPERATORS:
            with self.subTest(operator=name):
                _, fs = self._build(name)
                numeric = [
                    (self.service.evaluate(fs, x + h * e) - self.service.evaluate(fs, x - h * e)) / (2 * h)
                    for e in np.eye(2)
                ]
                assert_allclose(self.service.gradient(fs, x), numeric, rtol=1e-6, atol=1e-9)

    def test_log_split_reconstructs_kernel(self):
        """phi1·ln(4sin²((t-s)/2)) + phi2 = S_a(ψ(t) - ψ(s))"""
        curve = self.geometry.preset_curve("kite", 16)
        t, s = 0.4, 2.1
        diff = curve.shape.position(t) - curve.shape.position(s)
        for name in TEST_OPERATORS:
            with self.subTest(operator=name):
                _, fs = self._build(name)
                phi1, phi2 = self.service.log_split(fs, curve, t, s)
                value = phi1 * math.log(4 * math.sin((t - s) / 2) ** 2) + phi2
                self.assertAlmostEqual(abs(value - self.service.evaluate(fs, diff)), 0.0, places=12)

    def test_log_split_is_continuous_on_diagonal(self):
        """t -> s 时 phi2 趋于对角极限"""
        curve = self.geometry.preset_curve("ellipse", 16)
        for name in ("laplace", "yukawa", "drift"):
            with self.subTest(operator=name):
                _, fs = self._build(name)
                _, diagonal = self.service.log_split(fs, curve, 1.0, 1.0)
                _, nearby = self.service.log_split(fs, curve, 1.0, 1.0 + 1e-5)
                self.assertLess(abs(diagonal - nearby), 1e-4)

    def test_pair_kernels_are_cached(self):
        """同一 (基本解, 曲线) 返回同一对象"""
        _, fs = self._build("laplace")
        curve = self.geometry.preset_curve("circle", 16)
        first = self.service.curve_pair_kernels(fs, curve)
        self.assertIs(first, self.service.curve_pair_kernels(fs, curve))
        self.assertEqual(first.single.shape, (16, 16))
        self.assertEqual(first.gradient.shape, (2, 16, 16))


if __name__ == '__main__':
    unittest.main()
