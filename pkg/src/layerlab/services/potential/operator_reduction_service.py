# -*- coding: utf-8 -*-
"""
算子约化服务模块

负责二阶常系数椭圆算子 P[a,D] = Σ a_lj ∂_l∂_j + Σ a_l ∂_l + a 的校验与约化：
主部矩阵的实对称性与正定性检查、Cholesky 分解 a2 = T·Tᵗ、漂移指数 mu 与
约化零阶常数 kappa 的计算，以及作为验证基准的有限差分算子 apply_pde。
"""

from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from ...models.common import NotEllipticError, NotSymmetricError, ShapeMismatchError
from ...models.operator_models import OperatorCoefficients, ReducedForm
from ..numerics_service_base import NumericsServiceBase

PIVOT_TOLERANCE = 1e-12

# 可向量化求值的标量场：f(points[..., 2]) -> values[...]
ScalarField = Callable[[np.ndarray], np.ndarray]


class OperatorReductionService(NumericsServiceBase):
    """
    算子约化服务

    所有方法都是纯函数，可在任意线程中并发调用。
    """

    def validate(self, a2, a1: Sequence = (0.0, 0.0), a0: complex = 0.0) -> OperatorCoefficients:
        """
        校验算子系数

        Args:
            a2: 2x2 实对称正定主部矩阵
            a1: 复数一阶系数向量
            a0: 复数零阶系数

        Returns:
            OperatorCoefficients: 已校验的系数

        Raises:
            NotSymmetricError: a2 形状不对、带虚部或不对称
            NotEllipticError: a2 不是正定矩阵
            ShapeMismatchError: a1 长度不是 2
        """
        matrix = np.asarray(a2)
        if matrix.shape != (2, 2):
            raise NotSymmetricError(f"主部系数必须是 2x2 矩阵，实际形状为 {matrix.shape}")
        if np.iscomplexobj(matrix):
            if np.any(matrix.imag != 0):
                raise NotSymmetricError("主部系数必须为实数")
            matrix = matrix.real
        matrix = matrix.astype(float)
        if matrix[0, 1] != matrix[1, 0]:
            raise NotSymmetricError(f"主部系数矩阵不对称: a12={matrix[0, 1]}, a21={matrix[1, 0]}")

        first_order = np.asarray(a1, dtype=complex)
        if first_order.shape != (2,):
            raise ShapeMismatchError(f"一阶系数必须是长度为 2 的向量，实际形状为 {first_order.shape}")

        self._cholesky(matrix)
        return OperatorCoefficients(matrix, first_order, complex(a0))

    def _cholesky(self, matrix: np.ndarray) -> np.ndarray:
        largest = float(np.max(np.diag(matrix)))
        if largest <= 0:
            raise NotEllipticError(f"主部系数矩阵不是正定矩阵: 对角元 {np.diag(matrix)}")
        try:
            factor = scipy.linalg.cholesky(matrix, lower=True)
        except scipy.linalg.LinAlgError as e:
            raise NotEllipticError(f"主部系数矩阵不是正定矩阵: {e}") from e
        pivots = np.diag(factor) ** 2
        if float(np.min(pivots)) < PIVOT_TOLERANCE * largest:
            raise NotEllipticError(f"Cholesky主元过小: {pivots.min():.3e}")
        return factor

    def reduce(self, coeffs: OperatorCoefficients) -> ReducedForm:
        """
        约化：a2 = T·Tᵗ, mu = -(1/2) a2⁻¹ a1, kappa = a - (1/4) a1ᵗ a2⁻¹ a1

        Args:
            coeffs: 已校验的系数

        Returns:
            ReducedForm: 约化形式（逐位可复现）
        """
        self._log_operation_start("约化算子", operator=coeffs.label())
        factor = self._cholesky(np.asarray(coeffs.a2))
        factor_inv = scipy.linalg.solve_triangular(factor, np.eye(2), lower=True)
        a2_inv = factor_inv.T @ factor_inv
        det_factor = 1.0 / (factor[0, 0] * factor[1, 1])
        mu = -0.5 * (a2_inv @ coeffs.a1)
        kappa = coeffs.a0 - 0.25 * (coeffs.a1 @ a2_inv @ coeffs.a1)

        reduced = ReducedForm(factor, factor_inv, a2_inv, det_factor, mu, kappa)
        self._log_operation_success("约化算子", f"kappa={complex(kappa):.6g}")
        return reduced

    def apply_pde(self, coeffs: OperatorCoefficients, field: ScalarField, x, h: float = 1e-4):
        """
        二阶中心差分计算 P[a,D]u(x)

        Args:
            coeffs: 算子系数
            field: 可向量化的标量场 u(points[..., 2])
            x: 单个点 (2,) 或点集 (..., 2)，到场的奇点距离不小于 4h
            h: 差分步长

        Returns:
            complex 或复数数组: P u 在 x 处的差分值，截断误差 O(h²)
        """
        points = np.asarray(x, dtype=float)
        offsets = h * np.array([
            [0, 0], [1, 0], [-1, 0], [0, 1], [0, -1],
            [1, 1], [1, -1], [-1, 1], [-1, -1],
        ], dtype=float)
        stencil = np.asarray(field(points[..., None, :] + offsets), dtype=complex)
        u0, up1, um1, up2, um2, upp, upm, ump, umm = np.moveaxis(stencil, -1, 0)

        d11 = (up1 - 2.0 * u0 + um1) / h ** 2
        d22 = (up2 - 2.0 * u0 + um2) / h ** 2
        d12 = (upp - upm - ump + umm) / (4.0 * h ** 2)
        d1 = (up1 - um1) / (2.0 * h)
        d2 = (up2 - um2) / (2.0 * h)

        a2 = coeffs.a2
        result = (a2[0, 0] * d11 + 2.0 * a2[0, 1] * d12 + a2[1, 1] * d22
                  + coeffs.a1[0] * d1 + coeffs.a1[1] * d2 + coeffs.a0 * u0)
        if points.ndim == 1:
            return complex(result)
        return result
