# -*- coding: utf-8 -*-
"""
KernelClassService 单元测试

测试核类服务，包括：
- 节点对抽样顺序与核范数估计的预算单调性
- 乘积核 H[Z, g] 与范数传递上界
- 一般边界积分算子的两种对角规则
- Hölder 模预测的各个情况与越界错误
"""

import math
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.common import DomainError, LayerLabError, OutOfRangeError, PointOnCurveError
from src.layerlab.models.kernel_models import KernelClassParams, KernelNormEstimate, ModulusSpec
from src.layerlab.services.potential.kernel_class_service import _pair_order
from src.layerlab.services.potential.potential_service import PotentialService


class TestKernelNormEstimate(unittest.TestCase):
    """核范数估计测试类"""

    def setUp(self):
        """测试前置设置"""
        self.potential = PotentialService()
        self.service = self.potential.kernels
        self.coeffs = self.potential.operator(np.eye(2))
        self.fs = self.potential.fundamental_solution(self.coeffs)
        self.curve = self.potential.curve("kite", 32)

    def tearDown(self):
        """测试后清理"""
        self.potential = None

    def test_pair_order_covers_all_pairs(self):
        """每个有序节点对 i != k 恰好出现一次"""
        first, second = _pair_order(12, seed=3)
        self.assertEqual(first.size, 12 * 11)
        self.assertFalse(np.any(first == second))
        self.assertEqual(len(set(zip(first.tolist(), second.tolist()))), 12 * 11)

    def test_pair_order_is_reproducible(self):
        a = _pair_order(10, seed=7)
        b = _pair_order(10, seed=7)
        self.assertTrue(np.array_equal(a[0], b[0]))
        self.assertTrue(np.array_equal(a[1], b[1]))

    def test_constant_kernel(self):
        """K ≡ 1: sup1 = 1，增量恒为 0"""
        params = KernelClassParams(0.0, 1.0, 1.0)
        estimate = self.service.kernel_norm_estimate(self.service.constant_kernel(), self.curve, params, 4096)
        self.assertAlmostEqual(estimate.sup1, 1.0)
        self.assertEqual(estimate.sup2, 0.0)
        self.assertEqual(estimate.pairs_used, 32 * 31)
        self.assertEqual(estimate.samples_used, estimate.pairs_used + estimate.triples_used)

    def test_estimate_is_monotone_in_budget(self):
        params = KernelClassParams(1.0, 2.0, 1.0)
        kernel = self.service.gradient_kernel(self.fs, self.curve, 1)
        small = self.service.kernel_norm_estimate(kernel, self.curve, params, 512, seed=1)
        large = self.service.kernel_norm_estimate(kernel, self.curve, params, 8192, seed=1)
        self.assertGreaterEqual(large.sup1, small.sup1)
        self.assertGreaterEqual(large.sup2, small.sup2)
        self.assertGreater(large.samples_used, small.samples_used)

    def test_single_layer_kernel_is_bounded(self):
        """|x-y|^{1/2}·|ln|x-y||/2π 在有界曲线上有界"""
        params = KernelClassParams(0.5, 1.0, 1.0)
        estimate = self.service.kernel_norm_estimate(
            self.service.single_layer_kernel(self.fs, self.curve), self.curve, params, 4096)
        self.assertTrue(np.isfinite(estimate.norm))
        self.assertGreater(estimate.norm, 0.0)

    def test_single_layer_kernel_in_unit_class(self):
        """γ1 = 1 类：sup1 = max |x-y|·|ln|x-y||/2π，两个预算下都有限"""
        params = KernelClassParams(1.0, 1.0, 1.0)
        sampler = self.service.single_layer_kernel(self.fs, self.curve)
        small = self.service.kernel_norm_estimate(sampler, self.curve, params, 4096)
        large = self.service.kernel_norm_estimate(sampler, self.curve, params, 4 * 4096)

        diff = self.curve.points[:, None, :] - self.curve.points[None, :, :]
        distance = np.linalg.norm(diff, axis=-1)[~np.eye(32, dtype=bool)]
        expected = np.max(distance * np.abs(np.log(distance))) / (2 * math.pi)
        self.assertAlmostEqual(small.sup1, expected, places=12)
        for estimate in (small, large):
            self.assertTrue(np.isfinite(estimate.norm))
            self.assertGreater(estimate.norm, 0.0)
        self.assertEqual(large.sup1, small.sup1)
        self.assertGreaterEqual(large.sup2, small.sup2)

    def test_bad_budget(self):
        params = KernelClassParams(0.0, 1.0, 1.0)
        for budget in (0, -5):
            with self.subTest(budget=budget):
                with self.assertRaises(LayerLabError):
                    self.service.kernel_norm_estimate(self.service.constant_kernel(), self.curve, params, budget)

    def test_bad_gradient_component(self):
        with self.assertRaises(LayerLabError):
            self.service.gradient_kernel(self.fs, self.curve, 3)


class TestProductKernel(unittest.TestCase):
    """乘积核测试类"""

    def setUp(self):
        self.potential = PotentialService()
        self.service = self.potential.kernels
        self.curve = self.potential.curve("circle", 16)

    def test_constant_g_gives_zero_kernel(self):
        h = self.service.build_H(self.service.constant_kernel(2.0), lambda p: np.full(np.shape(p)[:-1], 3.0),
                                 self.curve)
        values = h(self.curve.points[:4], np.arange(4, 8))
        assert_allclose(values, 0.0)

    def test_linear_g(self):
        """g = x1: H(x, y_j) = (x1 - y_j1)·Z"""
        h = self.service.build_H(self.service.constant_kernel(2.0), lambda p: p[..., 0], self.curve)
        x = np.array([[0.5, 0.0], [0.0, 0.5]])
        source = np.array([0, 4])
        expected = 2.0 * (x[:, 0] - self.curve.points[source, 0])
        assert_allclose(h(x, source), expected, atol=1e-15)

    def test_transfer_bound(self):
        """2^n·‖Z‖·‖g‖"""
        self.assertEqual(self.service.h_transfer_bound(3.0, 2.0), 24.0)
        self.assertEqual(self.service.h_transfer_bound(KernelNormEstimate(1.0, 2.0, 10), 0.5, n=3), 12.0)


class TestApplyKernel(unittest.TestCase):
    """边界积分算子测试类"""

    def setUp(self):
        self.potential = PotentialService()
        self.service = self.potential.kernels
        self.coeffs = self.potential.operator(np.eye(2))
        self.fs = self.potential.fundamental_solution(self.coeffs)

    def test_constant_kernel_off_curve(self):
        """K ≡ 1 时离边界点上的值为 ∫μ dσ"""
        curve = self.potential.curve("circle", 32, [2.0])
        values = self.service.apply_kernel(self.service.constant_kernel(), curve, np.ones(32),
                                           points=np.array([[0.0, 0.0], [5.0, 1.0]]))
        assert_allclose(values, 4 * math.pi, rtol=1e-13)

    def test_exclude_rule_drops_diagonal(self):
        curve = self.potential.curve("circle", 32)
        values = self.service.apply_kernel(self.service.constant_kernel(), curve, np.ones(32))
        assert_allclose(values, 2 * math.pi * 31 / 32, rtol=1e-13)

    def test_log_split_matches_single_layer(self):
        """Kress 规则下的 u[∂Ω, S_a, μ] 与单层位势一致"""
        curve = self.potential.curve("ellipse", 16)
        mu = np.cos(curve.params)
        rule = self.service.single_layer_rule(self.fs, curve)
        values = self.service.apply_kernel(self.service.single_layer_kernel(self.fs, curve), curve, mu, rule)
        assert_allclose(values, self.potential.layers.single_layer(self.fs, curve, mu), atol=1e-10)

    def test_point_on_curve(self):
        curve = self.potential.curve("circle", 16)
        with self.assertRaises(PointOnCurveError):
            self.service.apply_kernel(self.service.constant_kernel(), curve, np.ones(16), points=curve.points[:2])


class TestModulusTransfer(unittest.TestCase):
    """Hölder 模预测测试类"""

    def setUp(self):
        self.service = PotentialService().kernels

    def test_strong_decay_case(self):
        """γ2 > n-1：r^{min{(n-1)-γ1, (n-1)-γ2+γ3}}"""
        predicted = self.service.modulus_transfer_predict(KernelClassParams(0.5, 1.5, 1.0))
        self.assertEqual(predicted, ModulusSpec.power(0.5))
        predicted = self.service.modulus_transfer_predict(KernelClassParams(0.0, 1.75, 1.0))
        self.assertEqual(predicted, ModulusSpec.power(0.25))

    def test_borderline_case(self):
        """γ2 = n-1：max{r^δ, ω_γ3}"""
        self.assertEqual(self.service.modulus_transfer_predict(KernelClassParams(0.25, 1.0, 0.5)),
                         ModulusSpec.log_power(0.5))
        self.assertEqual(self.service.modulus_transfer_predict(KernelClassParams(0.75, 1.0, 0.5)),
                         ModulusSpec.power(0.25))

    def test_shifted_cases(self):
        params = KernelClassParams(0.5, 1.5, 1.0)
        self.assertEqual(self.service.modulus_transfer_predict(params, alpha=0.5, beta=0.5),
                         ModulusSpec.log_power(1.0))
        # γ2 - β < n-1
        self.assertEqual(self.service.modulus_transfer_predict(KernelClassParams(0.5, 1.2, 0.6), alpha=0.5,
                                                               beta=0.5),
                         ModulusSpec.power(0.6))

    def test_out_of_range(self):
        cases = [
            (KernelClassParams(0.5, 1.5, 0.0), {}),
            (KernelClassParams(1.0, 1.5, 1.0), {}),
            (KernelClassParams(0.5, 0.5, 1.0), {}),
            (KernelClassParams(0.5, 3.0, 1.0), {}),
            (KernelClassParams(0.5, 1.5, 1.0), {"alpha": 0.5}),
            (KernelClassParams(0.2, 1.5, 1.0), {"alpha": 0.5, "beta": 0.5}),
        ]
        for params, extra in cases:
            with self.subTest(params=params, extra=extra):
                with self.assertRaises(OutOfRangeError):
                    self.service.modulus_transfer_predict(params, **extra)

    def test_shift_exponents_must_be_inside_unit_interval(self):
        """alpha、beta 取端点 0 或 1 时报 DomainError"""
        for alpha, beta in ((1.0, 0.5), (0.5, 1.0), (0.0, 0.5), (0.5, 0.0), (1.0, 1.0)):
            with self.subTest(alpha=alpha, beta=beta):
                with self.assertRaises(DomainError):
                    self.service.modulus_transfer_predict(KernelClassParams(1.0 - alpha, 1.5, 1.0),
                                                          alpha=alpha, beta=beta)


if __name__ == '__main__':
    unittest.main()
