# -*- coding: utf-8 -*-
"""
BoundaryGeometryService 单元测试

测试曲线采样、谱切向微积分、求积与边界常数，包括：
- 节点数与曲线参数的校验
- 圆上法向、权重与切向导数的闭式值
- 分部积分恒等式与 Kress 对数求积
- 边界常数的闭式值与对预算的单调性
"""

import math
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.common import BadExponentError, BadNodeCountError, LayerLabError
from src.layerlab.models.experiment_models import DensityKind, DensitySpec
from src.layerlab.services.potential.boundary_geometry_service import BoundaryGeometryService
from src.layerlab.services.potential.operator_reduction_service import OperatorReductionService


class TestCurveSampling(unittest.TestCase):
    """曲线采样测试类"""

    def setUp(self):
        """测试前置设置"""
        self.service = BoundaryGeometryService()

    def test_bad_node_count(self):
        for count in (7, 6, 33):
            with self.subTest(count=count):
                with self.assertRaises(BadNodeCountError):
                    self.service.preset_curve("circle", count)

    def test_bad_params(self):
        with self.assertRaises(LayerLabError):
            self.service.preset_curve("circle", 16, [1.0, 2.0])
        with self.assertRaises(LayerLabError):
            self.service.preset_curve("ellipse", 16, [2.0, -1.0])
        with self.assertRaises(ValueError):
            self.service.preset_curve("square", 16)

    def test_circle_geometry(self):
        """圆上 ν = x/ρ，权重之和为周长"""
        curve = self.service.preset_curve("circle", 32, [2.0])
        assert_allclose(curve.normals, curve.points / 2.0, atol=1e-15)
        self.assertAlmostEqual(curve.weights.sum(), 4 * math.pi)
        self.assertAlmostEqual(curve.step, 2 * math.pi / 32)
        self.assertEqual(curve.label(), "circle(2)[N=32]")

    def test_normals_point_outward(self):
        """∫ ν·x dσ = 2·面积 > 0；风筝面积为 1.5π"""
        curve = self.service.preset_curve("kite", 64)
        flux = float(np.sum(np.einsum("ik,ik->i", curve.normals, curve.points) * curve.weights))
        self.assertAlmostEqual(flux, 3 * math.pi, places=12)

    def test_curve_arrays_are_read_only(self):
        curve = self.service.preset_curve("ellipse", 16)
        with self.assertRaises(ValueError):
            curve.points[0, 0] = 1.0

    def test_refine_keeps_original_nodes(self):
        curve = self.service.preset_curve("kite", 16)
        refined = self.service.refine(curve, 64)
        assert_allclose(refined.points[::4], curve.points, atol=1e-15)
        with self.assertRaises(BadNodeCountError):
            self.service.refine(curve, 40)

    def test_density_presets(self):
        curve = self.service.preset_curve("circle", 16)
        assert_allclose(self.service.density(curve, DensitySpec(DensityKind.CONSTANT)), 1.0)
        assert_allclose(self.service.density(curve, DensitySpec(DensityKind.SIN)), np.sin(curve.params), atol=1e-15)
        sawtooth = self.service.density(curve, DensitySpec(DensityKind.ROUGH_SAWTOOTH, 2)).real
        self.assertAlmostEqual(sawtooth[0], -1.0)
        self.assertAlmostEqual(sawtooth[4], 1.0)
        self.assertLessEqual(np.max(np.abs(sawtooth)), 1.0)

    def test_targets_are_away_from_curve(self):
        for kind in ("circle", "ellipse", "kite"):
            curve = self.service.preset_curve(kind, 256)
            for targets in self.service.preset_targets(curve):
                distance = np.min(np.linalg.norm(targets[:, None, :] - curve.points[None, :, :], axis=2), axis=1)
                self.assertGreaterEqual(distance.min(), 0.3)


class TestTangentialCalculus(unittest.TestCase):
    """谱切向微积分与求积测试类"""

    def setUp(self):
        self.service = BoundaryGeometryService()
        self.circle = self.service.preset_curve("circle", 32, [2.0])

    def test_tangential_derivative_on_circle(self):
        """圆上 M_12[f] = df/ds；M_12[x1] = -sin t"""
        x1 = self.circle.points[:, 0]
        t = self.circle.params
        assert_allclose(self.service.tangential_M(self.circle, x1, 1, 2), -np.sin(t), atol=1e-13)
        assert_allclose(self.service.tangential_M(self.circle, x1, 2, 1), np.sin(t), atol=1e-13)
        assert_allclose(self.service.tangential_M(self.circle, x1, 1, 1), 0.0, atol=1e-15)
        with self.assertRaises(LayerLabError):
            self.service.tangential_M(self.circle, x1, 0, 1)

    def test_projected_gradient_recovers_gradient(self):
        """线性函数 f = c·x 的投影梯度等于 c 的切向分量（Laplace 时即 c - (c·ν)ν）"""
        coeffs = OperatorReductionService().validate(np.eye(2))
        c = np.array([0.3, -1.2])
        f = self.circle.points @ c
        projected = self.service.projected_grad_Da(self.circle, f, coeffs)
        tangential = c[None, :] - (self.circle.normals @ c)[:, None] * self.circle.normals
        assert_allclose(projected.T, tangential, atol=1e-12)

    def test_gagre_residual(self):
        """∫M_12[φ]ψ + ∫φM_12[ψ] = 0"""
        kite = self.service.preset_curve("kite", 128)
        t = kite.params
        phi = np.cos(t) + 0.5 * np.sin(2 * t)
        psi = np.sin(t) + np.cos(3 * t)
        self.assertLess(self.service.gagre_residual(kite, phi, psi), 1e-12)

    def test_quad_and_quad_log(self):
        """∫ ln(4sin²((t_i-s)/2)) cos s · ρ ds = -2πρ cos t_i"""
        self.assertAlmostEqual(self.service.quad(self.circle, np.ones(32)).real, 4 * math.pi)
        value = self.service.quad_log(self.circle, lambda t, s: np.cos(s), lambda t, s: np.zeros_like(s), 5)
        self.assertAlmostEqual(value.real, -2 * math.pi * 2.0 * math.cos(self.circle.params[5]), places=12)

    def test_resample(self):
        t = self.circle.params
        fine = self.service.resample(np.cos(3 * t), 128)
        assert_allclose(fine, np.cos(3 * 2 * np.pi * np.arange(128) / 128), atol=1e-13)


class TestBoundaryConstants(unittest.TestCase):
    """边界常数测试类"""

    def setUp(self):
        self.service = BoundaryGeometryService()

    def test_circle_commutator_constant(self):
        """圆 (半径 ρ) 上 α = 1 时 c_com = 1/(2ρ)"""
        for radius in (1.0, 2.0):
            curve = self.service.preset_curve("circle", 32, [radius])
            constants = self.service.boundary_constants(curve, 1.0, 2 ** 12)
            self.assertAlmostEqual(constants.c_com, 1.0 / (2 * radius), delta=1e-10)
            self.assertEqual(constants.samples_used, 32 * 127)

    def test_monotone_in_budget(self):
        """预算增大时 x'' 集合扩大，估计单调不减"""
        curve = self.service.preset_curve("kite", 32)
        small = self.service.boundary_constants(curve, 0.5, 2 ** 11)
        large = self.service.boundary_constants(curve, 0.5, 2 ** 13)
        for name in ("c_com", "c1", "c2", "c3", "c4"):
            with self.subTest(constant=name):
                self.assertGreaterEqual(getattr(large, name), getattr(small, name))
                self.assertGreater(getattr(small, name), 0.0)

    def test_bad_exponents(self):
        curve = self.service.preset_curve("circle", 16)
        with self.assertRaises(BadExponentError):
            self.service.boundary_constants(curve, 0.0, 1024)
        with self.assertRaises(BadExponentError):
            self.service.boundary_constants(curve, 0.5, 1024, gamma_weak=1.0)
        with self.assertRaises(BadExponentError):
            self.service.boundary_constants(curve, 0.5, 1024, gamma_strong=1.0)


if __name__ == '__main__':
    unittest.main()
