# -*- coding: utf-8 -*-
"""
边界几何服务模块

负责预置解析曲线的采样、沿曲线的谱切向微积分（弧长导数、切向导数 M_lr、
投影梯度 D_a）、周期梯形与 Kress 对数求积，以及边界几何常数的抽样估计。

约定：
- 参数化为逆时针方向，外法向 ν = (ψ'₂, -ψ'₁)/|ψ'|
- 对外接口中的下标 l, j, r 从 1 开始
"""

from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ...models.boundary_models import BoundaryCurve, CurveKind, CurveShape
from ...models.common import BadExponentError, BadNodeCountError, LayerLabError
from ...models.experiment_models import DensityKind, DensitySpec
from ...models.kernel_models import BiperiodicSampler, BoundaryConstants
from ...models.operator_models import OperatorCoefficients
from ...utils.quadrature_utils import kress_matrix
from ...utils.spectral_utils import arc_length_derivative, fourier_derivative, trig_resample
from ..numerics_service_base import NumericsServiceBase

MIN_NODE_COUNT = 8
MIN_SPEED = 1e-10
BOUNDARY_QUAD_REFINE = 8           # 边界常数积分使用的固定加密倍数
DEFAULT_CURVE_PARAMS = {
    CurveKind.CIRCLE: (1.0,),
    CurveKind.ELLIPSE: (2.0, 1.0),
    CurveKind.KITE: (),
}


def _component(index: int) -> int:
    if index not in (1, 2):
        raise LayerLabError(f"坐标下标必须为 1 或 2，实际为 {index}")
    return index - 1


class BoundaryGeometryService(NumericsServiceBase):
    """
    边界几何服务

    曲线对象不可变，所有操作都是纯函数。
    """

    # region 曲线采样

    def preset_curve(self, kind, node_count: int, params: Optional[Sequence[float]] = None) -> BoundaryCurve:
        """
        采样预置曲线

        Args:
            kind: 'circle' / 'ellipse' / 'kite' 或 CurveKind
            node_count: 偶数节点数 N >= 8
            params: circle 为 (半径,)，ellipse 为 (a, b)，kite 无参数；缺省取 (1,)、(2, 1)

        Raises:
            BadNodeCountError: N 为奇数或小于 8
            LayerLabError: 曲线参数个数或取值无效
        """
        curve_kind = CurveKind(kind)
        values = tuple(float(p) for p in (DEFAULT_CURVE_PARAMS[curve_kind] if params is None else params))
        expected = len(DEFAULT_CURVE_PARAMS[curve_kind])
        if len(values) != expected:
            raise LayerLabError(f"{curve_kind.value} 需要 {expected} 个参数，实际为 {len(values)}")
        if any(p <= 0 for p in values):
            raise LayerLabError(f"{curve_kind.value} 的参数必须为正数: {values}")
        return self.sample_shape(CurveShape(curve_kind, values), node_count)

    def sample_shape(self, shape: CurveShape, node_count: int) -> BoundaryCurve:
        """在 t_i = 2πi/N 处采样解析形状，全部导出量解析计算"""
        if node_count % 2 or node_count < MIN_NODE_COUNT:
            raise BadNodeCountError(f"节点数必须是不小于 {MIN_NODE_COUNT} 的偶数，实际为 {node_count}")

        params = 2.0 * np.pi * np.arange(node_count) / node_count
        points = shape.position(params)
        d1 = shape.first_derivative(params)
        d2 = shape.second_derivative(params)
        speeds = np.linalg.norm(d1, axis=1)
        if speeds.min() <= MIN_SPEED:
            raise LayerLabError(f"曲线 {shape.label()} 的参数速度过小: {speeds.min():.3e}")
        tangents = d1 / speeds[:, None]
        normals = np.stack([tangents[:, 1], -tangents[:, 0]], axis=1)
        weights = (2.0 * np.pi / node_count) * speeds

        return BoundaryCurve(shape, node_count, params, points, d1, d2, speeds, tangents, normals, weights)

    def refine(self, curve: BoundaryCurve, node_count: int) -> BoundaryCurve:
        """在 M 个节点上重新采样解析形状（M 为 N 的整数倍，原节点是新节点的子集）"""
        if node_count % curve.node_count:
            raise BadNodeCountError(f"加密节点数 {node_count} 不是 {curve.node_count} 的整数倍")
        return self.sample_shape(curve.shape, node_count)

    def resample(self, values, node_count: int) -> np.ndarray:
        """边界函数的三角插值重采样"""
        return trig_resample(np.asarray(values), node_count)

    def preset_targets(self, curve: BoundaryCurve) -> Tuple[np.ndarray, np.ndarray]:
        """
        预置曲线的内部/外部检验点，到曲线的距离都不小于 0.3

        Returns:
            (interior (k, 2), exterior (m, 2))
        """
        shape = curve.shape
        if shape.kind is CurveKind.CIRCLE:
            (radius,) = shape.params
            interior = radius * np.array([[0.0, 0.0], [0.3, 0.2], [-0.4, 0.1], [0.1, -0.5]])
            exterior = radius * np.array([[3.0, 0.0], [0.0, 2.5], [-2.0, -2.0]])
        elif shape.kind is CurveKind.ELLIPSE:
            a, b = shape.params
            interior = np.array([[0.0, 0.0], [0.3 * a, 0.2 * b], [-0.4 * a, 0.1 * b]])
            exterior = np.array([[2.0 * a, 0.0], [0.0, 2.0 * b], [-1.5 * a, -1.5 * b]])
        else:
            interior = np.array([[0.0, 0.0], [0.3, 0.2], [-0.2, -0.3]])
            exterior = np.array([[3.0, 0.0], [0.0, 3.0], [-3.0, -2.0], [-1.6, 0.0]])
        return interior, exterior

    # endregion

    # region 边界函数

    def trace(self, curve: BoundaryCurve, field: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """全局函数在节点上的限制，field 接受形状 (N, 2) 的点集"""
        return np.asarray(field(curve.points), dtype=complex)

    def density(self, curve: BoundaryCurve, spec: DensitySpec) -> np.ndarray:
        """
        密度预设

        constant: 1；cos / sin: cos t, sin t；rough_sawtooth(k): k 齿三角波；
        c1_wave: sin t·|sin t|
        """
        t = curve.params
        if spec.kind is DensityKind.CONSTANT:
            values = np.ones_like(t)
        elif spec.kind is DensityKind.COS:
            values = np.cos(t)
        elif spec.kind is DensityKind.SIN:
            values = np.sin(t)
        elif spec.kind is DensityKind.ROUGH_SAWTOOTH:
            phase = np.mod(spec.teeth * t / (2.0 * np.pi), 1.0)
            values = 1.0 - 4.0 * np.abs(phase - 0.5)
        else:
            values = np.sin(t) * np.abs(np.sin(t))
        return values.astype(complex)

    # endregion

    # region 切向微积分

    def spectral_dds(self, curve: BoundaryCurve, f) -> np.ndarray:
        """弧长导数 df/ds（FFT 微分除以速度）"""
        return arc_length_derivative(np.asarray(f), curve.speeds)

    def spectral_dt(self, curve: BoundaryCurve, f) -> np.ndarray:
        """参数导数 df/dt"""
        return fourier_derivative(np.asarray(f))

    def tangential_M(self, curve: BoundaryCurve, f, l: int, r: int) -> np.ndarray:
        """
        切向导数 M_lr[f] = (ν_l τ_r - ν_r τ_l)·df/ds

        Args:
            l, r: 1 或 2
        """
        li, ri = _component(l), _component(r)
        nu, tau = curve.normals, curve.tangents
        factor = nu[:, li] * tau[:, ri] - nu[:, ri] * tau[:, li]
        return factor * self.spectral_dds(curve, f)

    def projected_grad_Da(self, curve: BoundaryCurve, f, coeffs: OperatorCoefficients) -> np.ndarray:
        """
        投影梯度 D_{a,r} f = Σ_l M_lr[f]·(a2 ν)_l / (νᵗ a2 ν)

        Returns:
            形状 (2, N) 的数组，第 r-1 行为 D_{a,r} f
        """
        a2_nu = curve.normals @ coeffs.a2
        nu_a_nu = np.einsum("ik,ik->i", curve.normals, a2_nu)
        rows = []
        for r in (1, 2):
            total = sum(self.tangential_M(curve, f, l, r) * a2_nu[:, l - 1] for l in (1, 2))
            rows.append(total / nu_a_nu)
        return np.stack(rows)

    def gagre_residual(self, curve: BoundaryCurve, phi, psi) -> float:
        """分部积分恒等式 ∫M_12[φ]ψ dσ + ∫φ M_12[ψ] dσ = 0 的残差"""
        first = self.quad(curve, self.tangential_M(curve, phi, 1, 2) * np.asarray(psi))
        second = self.quad(curve, np.asarray(phi) * self.tangential_M(curve, psi, 1, 2))
        return float(abs(first + second))

    # endregion

    # region 求积

    def quad(self, curve: BoundaryCurve, f) -> complex:
        """周期梯形 Σ f_i·w_i"""
        return complex(np.sum(np.asarray(f) * curve.weights))

    def quad_log(self, curve: BoundaryCurve, phi1: BiperiodicSampler, phi2: BiperiodicSampler,
                 target_index: int) -> complex:
        """
        Kress 对数求积：∫ [phi1(t_i,s)·ln(4sin²((t_i-s)/2)) + phi2(t_i,s)]·|ψ'(s)| ds

        phi1、phi2 接受 (t, s) 数组并广播。
        """
        n = curve.node_count
        s = curve.params
        t = np.full_like(s, curve.params[target_index])
        weights = kress_matrix(n)[target_index]
        values = weights * np.asarray(phi1(t, s)) + (2.0 * np.pi / n) * np.asarray(phi2(t, s))
        return complex(np.sum(values * curve.speeds))

    # endregion

    # region 边界常数

    def boundary_constants(self, curve: BoundaryCurve, alpha: float, sample_budget: int,
                           gamma_weak: float = 0.0, gamma_strong: float = 1.5,
                           seed: int = 0) -> BoundaryConstants:
        """
        边界几何常数的抽样估计

        x' 取曲线节点，x'' 取加密网格 M = N·2^k（N·M 不超过预算）的节点，
        积分在固定的 8N 点网格上用排除 x' 的梯形和加局部解析修正计算。
        预算增大时 x'' 集合单调扩大，估计值单调不减。

        Args:
            alpha: c_com 的指数，(0, 1]
            sample_budget: 节点对 (x', x'') 的数量预算
            gamma_weak: c'、c'' 使用的指数，须 < 1
            gamma_strong: c''' 使用的指数，须 > 1
            seed: 保留给接口一致性，本估计为确定性枚举

        Raises:
            BadExponentError: 指数超出范围
        """
        if not (0.0 < alpha <= 1.0):
            raise BadExponentError(f"alpha 必须位于 (0, 1]，实际为 {alpha}")
        if gamma_weak >= 1.0:
            raise BadExponentError(f"gamma_weak 必须小于 1，实际为 {gamma_weak}")
        if gamma_strong <= 1.0:
            raise BadExponentError(f"gamma_strong 必须大于 1，实际为 {gamma_strong}")

        n = curve.node_count
        second_count = n
        while n * second_count * 2 <= sample_budget:
            second_count *= 2
        if n * n > sample_budget:
            self.logger.warning(f"抽样预算 {sample_budget} 小于 N² = {n * n}，按 N² 计算")
        self._log_operation_start("估计边界常数", curve=curve.label(), second_points=second_count, seed=seed)

        seconds = self.refine(curve, second_count)
        quad_grid = self.refine(curve, n * BOUNDARY_QUAD_REFINE)
        cell = quad_grid.step

        c_com = c1 = c2 = c3 = c4 = 0.0
        for i in range(n):
            x_prime = curve.points[i]
            # x' 在加密网格中的下标
            quad_index = i * BOUNDARY_QUAD_REFINE
            second_index = i * (second_count // n)

            # x'' 与 c_com
            diff = x_prime - seconds.points
            dist = np.linalg.norm(diff, axis=1)
            mask = np.arange(second_count) != second_index
            d = dist[mask]
            # |ν(x'')·(x' - x'')|
            com_values = np.abs(np.einsum("ik,ik->i", seconds.normals[mask], diff[mask])) / d ** (1.0 + alpha)
            c_com = max(c_com, float(com_values.max()))

            # 固定网格上的排序距离与累积积分
            q_diff = x_prime - quad_grid.points
            q_dist = np.linalg.norm(q_diff, axis=1)
            keep = np.arange(quad_grid.node_count) != quad_index
            r = q_dist[keep]
            w = quad_grid.weights[keep]
            order = np.argsort(r)
            r_sorted = r[order]
            w_sorted = w[order]
            speed = quad_grid.speeds[quad_index]
            local_radius = speed * cell / 2.0

            def local_part(gamma, radius):
                return 2.0 * np.power(radius, 1.0 - gamma) / (1.0 - gamma)

            weak_cum = np.concatenate([[0.0], np.cumsum(w_sorted * r_sorted ** (-gamma_weak))])
            strong_terms = w_sorted * r_sorted ** (-gamma_strong)
            strong_tail = np.concatenate([np.cumsum(strong_terms[::-1])[::-1], [0.0]])
            log_terms = w_sorted / r_sorted
            log_tail = np.concatenate([np.cumsum(log_terms[::-1])[::-1], [0.0]])

            # c'：全曲线积分
            c1 = max(c1, float(weak_cum[-1] + local_part(gamma_weak, local_radius)))

            # c''：球 B(x', 3d) 内的积分
            inside = np.searchsorted(r_sorted, 3.0 * d, side="left")
            ball = weak_cum[inside] + local_part(gamma_weak, np.minimum(3.0 * d, local_radius))
            c2 = max(c2, float(np.max(d ** (gamma_weak - 1.0) * ball)))

            # c'''：球 B(x', 2d) 外的积分
            outside = np.searchsorted(r_sorted, 2.0 * d, side="left")
            c3 = max(c3, float(np.max(d ** (gamma_strong - 1.0) * strong_tail[outside])))

            # c^iv：0 < d < 1/e
            small = d < np.exp(-1.0)
            if np.any(small):
                ratio = log_tail[outside[small]] / np.abs(np.log(d[small]))
                c4 = max(c4, float(ratio.max()))

        samples = n * (second_count - 1)
        constants = BoundaryConstants(c_com, c1, c2, c3, c4, alpha, gamma_weak, gamma_strong, samples)
        self._log_operation_success("估计边界常数", f"c_com={c_com:.6g}, 样本数={samples}")
        return constants

    # endregion
