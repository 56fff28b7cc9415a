# -*- coding: utf-8 -*-
"""
OperatorReductionService 单元测试

测试算子系数的校验与约化，包括：
- 对称性、椭圆性与形状校验
- Cholesky 因子、漂移指数与约化常数
- 有限差分算子 apply_pde
"""

import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.common import NotEllipticError, NotSymmetricError, ShapeMismatchError
from src.layerlab.services.potential.operator_reduction_service import OperatorReductionService


class TestOperatorReductionService(unittest.TestCase):
    """OperatorReductionService 测试类"""

    def setUp(self):
        """测试前置设置"""
        self.service = OperatorReductionService()

    def tearDown(self):
        """测试后清理"""
        self.service = None

    def test_validate_accepts_laplace(self):
        coeffs = self.service.validate(np.eye(2))
        assert_allclose(coeffs.a1, [0.0, 0.0])
        self.assertEqual(coeffs.a0, 0.0)

    def test_validate_rejects_asymmetric(self):
        """a12 != a21"""
        with self.assertRaises(NotSymmetricError):
            self.service.validate([[1.0, 0.5], [0.0, 1.0]])

    def test_validate_rejects_complex_principal_part(self):
        with self.assertRaises(NotSymmetricError):
            self.service.validate([[1.0 + 1j, 0.0], [0.0, 1.0]])

    def test_validate_rejects_wrong_shape(self):
        with self.assertRaises(NotSymmetricError):
            self.service.validate(np.eye(3))
        with self.assertRaises(ShapeMismatchError):
            self.service.validate(np.eye(2), [1.0, 0.0, 0.0])

    def test_validate_rejects_non_elliptic(self):
        """负定、奇异与不定矩阵"""
        for matrix in (-np.eye(2), [[1.0, 1.0], [1.0, 1.0]], [[1.0, 2.0], [2.0, 1.0]]):
            with self.subTest(matrix=matrix):
                with self.assertRaises(NotEllipticError):
                    self.service.validate(matrix)

    def test_reduce_anisotropic(self):
        """a2 = T·Tᵗ，det_factor = 1/√det a2"""
        coeffs = self.service.validate([[4.0, 1.0], [1.0, 2.0]])
        reduced = self.service.reduce(coeffs)
        assert_allclose(reduced.T @ reduced.T.T, coeffs.a2, atol=1e-14)
        assert_allclose(reduced.T_inv @ reduced.T, np.eye(2), atol=1e-14)
        assert_allclose(reduced.a2_inv @ coeffs.a2, np.eye(2), atol=1e-14)
        self.assertAlmostEqual(reduced.det_factor, 1.0 / np.sqrt(7.0))
        self.assertEqual(reduced.T[0, 1], 0.0)

    def test_reduce_drift_operator(self):
        """(I, (2,0), 1): mu = (-1, 0), kappa = 1 - 1 = 0"""
        reduced = self.service.reduce(self.service.validate(np.eye(2), [2.0, 0.0], 1.0))
        assert_allclose(reduced.mu, [-1.0, 0.0])
        self.assertAlmostEqual(abs(reduced.kappa), 0.0)

    def test_reduce_is_reproducible(self):
        coeffs = self.service.validate([[3.0, 0.5], [0.5, 1.0]], [1.0, 1j], 2.0)
        first = self.service.reduce(coeffs)
        second = self.service.reduce(coeffs)
        self.assertTrue(np.array_equal(first.T, second.T))
        self.assertEqual(first.kappa, second.kappa)

    def test_apply_pde_on_quadratic(self):
        """u = x1² + x2²: P u = 4 + 2·a1·x + a0·|x|²"""
        coeffs = self.service.validate(np.eye(2), [2.0, 0.0], 1.0)

        def field(points):
            return points[..., 0] ** 2 + points[..., 1] ** 2

        value = self.service.apply_pde(coeffs, field, [1.0, 2.0], h=1e-3)
        self.assertAlmostEqual(value.real, 4.0 + 4.0 + 5.0, delta=1e-6)

        values = self.service.apply_pde(coeffs, field, np.array([[0.0, 0.0], [1.0, 0.0]]), h=1e-3)
        assert_allclose(values.real, [4.0, 4.0 + 4.0 + 1.0], atol=1e-6)


if __name__ == '__main__':
    unittest.main()
