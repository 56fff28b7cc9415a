# -*- coding: utf-8 -*-
"""
SchauderMetricService 单元测试
"""

import math
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.common import BadExponentError, DomainError
from src.layerlab.models.kernel_models import ModulusSpec
from src.layerlab.services.potential.boundary_geometry_service import BoundaryGeometryService
from src.layerlab.services.potential.schauder_metric_service import SchauderMetricService


class TestModulus(unittest.TestCase):
    """模函数测试类"""

    def setUp(self):
        """测试前置设置"""
        self.service = SchauderMetricService()

    def test_power(self):
        self.assertAlmostEqual(self.service.omega(ModulusSpec.power(0.5), 4.0), 2.0)
        assert_allclose(self.service.omega(ModulusSpec.power(1.0), [0.1, 3.0]), [0.1, 3.0])

    def test_log_power_is_capped(self):
        """r_θ = e^{-1/θ} 之后取常数 e^{-1}/θ"""
        spec = ModulusSpec.log_power(0.5)
        self.assertAlmostEqual(self.service.omega(spec, math.exp(-4.0)), 4.0 * math.exp(-2.0))
        self.assertAlmostEqual(self.service.omega(spec, 1.0), 2.0 / math.e)
        self.assertAlmostEqual(self.service.omega(spec, 50.0), 2.0 / math.e)

    def test_non_positive_radius(self):
        for r in (0.0, [1.0, -1.0]):
            with self.subTest(r=r):
                with self.assertRaises(DomainError):
                    self.service.omega(ModulusSpec.power(0.5), r)

    def test_modulus_properties(self):
        for spec in (ModulusSpec.power(0.5), ModulusSpec.log_power(0.8), ModulusSpec.log_power(1.0)):
            with self.subTest(spec=spec.label()):
                properties = self.service.modulus_properties(spec)
                self.assertTrue(properties.monotone)
                self.assertLess(properties.value_at_min, 1e-4)
                self.assertTrue(np.isfinite(properties.sup_ratio))
        self.assertLess(self.service.modulus_properties(ModulusSpec.power(0.5)).sup_ratio, 1.0)


class TestSchauderNorms(unittest.TestCase):
    """Hölder 商与 Schauder 范数测试类"""

    def setUp(self):
        self.geometry = BoundaryGeometryService()
        self.service = SchauderMetricService(geometry_service=self.geometry)
        self.circle = self.geometry.preset_curve("circle", 32)

    def test_holder_quotient_of_coordinate(self):
        """|x1 - y1| / |x - y| 的最大值 1 在水平节点对上取到"""
        quotient = self.service.holder_quotient(self.circle, self.circle.points[:, 0], ModulusSpec.power(1.0))
        self.assertAlmostEqual(quotient, 1.0, places=12)

    def test_constant_has_zero_quotient(self):
        self.assertEqual(self.service.holder_quotient(self.circle, np.ones(32), ModulusSpec.log_power(0.5)), 0.0)

    def test_schauder_norm_of_coordinate(self):
        """单位圆上 x1：m=0 为 1 + 1，m=1 为 1 + ‖-sin‖_0 + ‖sin‖_0 = 5"""
        x1 = self.circle.points[:, 0]
        spec = ModulusSpec.power(1.0)
        self.assertAlmostEqual(self.service.schauder_norm(self.circle, x1, 0, spec), 2.0, places=12)
        self.assertAlmostEqual(self.service.schauder_norm(self.circle, x1, 1, spec), 5.0, places=10)
        with self.assertRaises(BadExponentError):
            self.service.schauder_norm(self.circle, x1, -1, spec)

    def test_embedding(self):
        kite = self.geometry.preset_curve("kite", 64)
        f = np.abs(np.sin(kite.params)) ** 0.7
        check = self.service.embedding_check(kite, f, 0.7, 0.3)
        self.assertTrue(check.holds)
        self.assertGreater(check.diameter, 0.0)

    def test_embedding_bad_exponents(self):
        for alpha, beta in ((0.3, 0.5), (0.5, 0.0), (1.5, 0.5)):
            with self.subTest(alpha=alpha, beta=beta):
                with self.assertRaises(BadExponentError):
                    self.service.embedding_check(self.circle, np.ones(32), alpha, beta)


if __name__ == '__main__':
    unittest.main()
