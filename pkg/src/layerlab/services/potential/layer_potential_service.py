# -*- coding: utf-8 -*-
"""
层位势服务模块

实现单层位势 v、双层位势 w 与法向导数型算子 w_*：
- 边界上的值用 Kress-Nyström 矩阵（对数分解 + 对角解析极限）
- 离边界的值：远处目标点用节点上的周期梯形，近处目标点用向垂足几何加密的
  Gauss-Legendre 面板（每个目标点一套节点）
- 跳跃关系残差用法向偏移点上的值做 Richardson 外推
- Gauss 恒等式、梯度恒等式 (内部/外部) 与 w_* 恒等式残差

符号约定：Ω 为曲线内部，上标 + 表示从 Ω 内部趋于边界，ν 为外法向。
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ...models.boundary_models import BoundaryCurve
from ...models.common import LayerLabError, PointOnCurveError, ResidualReport
from ...models.kernel_models import KernelSampler
from ...models.operator_models import FundamentalSolution, OperatorCoefficients
from ...utils.quadrature_utils import graded_panel_rule, richardson_extrapolate
from ...utils.spectral_utils import significant_wave_numbers, trig_evaluate
from ..numerics_service_base import NumericsServiceBase
from .boundary_geometry_service import BoundaryGeometryService
from .fundamental_solution_service import CurvePairKernels, FundamentalSolutionService

ON_CURVE_DISTANCE = 1e-12
FOOT_NEWTON_STEPS = 8
GEOMETRY_BANDWIDTH = 4          # 预置曲线参数化的最高模态留量
PANEL_PHASE = 8.0               # 单个面板上最高模态的相位变化上限


def _rotate(vectors: np.ndarray) -> np.ndarray:
    """(v1, v2) -> (v2, -v1)"""
    return np.stack([vectors[..., 1], -vectors[..., 0]], axis=-1)


@dataclass(frozen=True)
class QuadratureNodes:
    """
    离边界求积节点

    梯形节点被所有目标点共享，各数组的目标点维长度为 1；分级面板节点
    每个目标点一套，目标点维长度为 P。
    params/weights 形状 (P|1, M)，points/normals 形状 (P|1, M, 2)，
    densities 形状 (K, P|1, M)。weights 已含弧长因子 |ψ'|。
    """
    params: np.ndarray
    points: np.ndarray
    normals: np.ndarray
    weights: np.ndarray
    densities: np.ndarray

    @property
    def shared(self) -> bool:
        return self.weights.shape[0] == 1

    def integrate(self, kernel: np.ndarray) -> np.ndarray:
        """
        Σ_m kernel·weight·density

        Args:
            kernel: 形状 (P, M) 或 (P, M, B)

        Returns:
            形状 (K, P) 或 (K, P, B)
        """
        kernel = np.asarray(kernel)
        vector = kernel.ndim == 3
        weighted = kernel * (self.weights[..., None] if vector else self.weights)
        if self.shared:
            return np.einsum("pmb,km->kpb" if vector else "pm,km->kp", weighted, self.densities[:, 0])
        return np.einsum("pmb,kpm->kpb" if vector else "pm,kpm->kp", weighted, self.densities)


# 离边界积分核：(求积节点, 差向量 x - y (P, M, 2), 目标点 (P, 2)) -> (K, P, ...)
OffCurveIntegrand = Callable[[QuadratureNodes, np.ndarray, np.ndarray], np.ndarray]


class LayerPotentialService(NumericsServiceBase):
    """
    层位势服务

    依赖基本解服务（核分解缓存）与边界几何服务（加密、谱微分）。
    """

    def __init__(self, fundamental_service: Optional[FundamentalSolutionService] = None,
                 geometry_service: Optional[BoundaryGeometryService] = None):
        super().__init__()
        self._fundamental = fundamental_service or FundamentalSolutionService()
        self._geometry = geometry_service or BoundaryGeometryService()

    @property
    def fundamental_service(self) -> FundamentalSolutionService:
        return self._fundamental

    @property
    def geometry_service(self) -> BoundaryGeometryService:
        return self._geometry

    # region 几何辅助量

    def pair_kernels(self, fs: FundamentalSolution, curve: BoundaryCurve) -> CurvePairKernels:
        return self._fundamental.curve_pair_kernels(fs, curve)

    def conormal_weight(self, coeffs: OperatorCoefficients, curve: BoundaryCurve) -> np.ndarray:
        """νᵗ a2 ν"""
        return np.einsum("ik,kl,il->i", curve.normals, coeffs.a2, curve.normals)

    def normal_dt(self, curve: BoundaryCurve) -> np.ndarray:
        """外法向的参数导数 dν/dt，形状 (N, 2)"""
        speeds = curve.speeds
        speed_dt = np.einsum("ik,ik->i", curve.d1, curve.d2) / speeds
        return _rotate(curve.d2) / speeds[:, None] - curve.normals * (speed_dt / speeds)[:, None]

    def _curvature_limit(self, fs: FundamentalSolution, curve: BoundaryCurve) -> np.ndarray:
        """双层核与 w_* 核对角极限中的 -ν·ψ'' / (2ψ'ᵗa2⁻¹ψ')"""
        q = np.einsum("ik,kl,il->i", curve.d1, fs.reduced.a2_inv, curve.d1)
        return -np.einsum("ik,ik->i", curve.normals, curve.d2) / (2.0 * q)

    # endregion

    # region 边界上的 Nyström 矩阵

    def single_layer_matrix(self, fs: FundamentalSolution, curve: BoundaryCurve) -> np.ndarray:
        """单层位势在节点上的矩阵 V，v_i = Σ_j V_ij μ_j"""
        kernels = self.pair_kernels(fs, curve)
        phi1, kernel = kernels.combine(c_single=1.0)
        return kernels.nystrom(phi1, kernel, kernels.diagonal_limit(1.0, 0.0))

    def double_layer_matrix(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                            curve: BoundaryCurve) -> np.ndarray:
        """
        双层位势矩阵 W

        核 -Σ (a2ν(y))_b ∂_b S_a(x-y) - (ν(y)·a1) S_a(x-y)；对角的低阶权为 -ν·a1/2，
        比值极限为 -ν·ψ''/(2q)。
        """
        kernels = self.pair_kernels(fs, curve)
        a2_nu = curve.normals @ coeffs.a2
        nu_a1 = curve.normals @ coeffs.a1
        phi1, kernel = kernels.combine(
            c_single=-nu_a1[None, :],
            c_gradient=[-a2_nu[None, :, 0], -a2_nu[None, :, 1]],
        )
        diagonal = kernels.diagonal_limit(-0.5 * nu_a1, self._curvature_limit(fs, curve))
        return kernels.nystrom(phi1, kernel, diagonal)

    def w_star_matrix(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                      curve: BoundaryCurve) -> np.ndarray:
        """w_* 矩阵，核 DS_a(x-y)·a2ν(x)"""
        kernels = self.pair_kernels(fs, curve)
        a2_nu = curve.normals @ coeffs.a2
        nu_a1 = curve.normals @ coeffs.a1
        phi1, kernel = kernels.combine(c_gradient=[a2_nu[:, None, 0], a2_nu[:, None, 1]])
        diagonal = kernels.diagonal_limit(-0.5 * nu_a1, self._curvature_limit(fs, curve))
        return kernels.nystrom(phi1, kernel, diagonal)

    # endregion

    # region 离边界求值

    def _nearest_nodes(self, points: np.ndarray, nodes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """每个点到最近节点的 (距离, 节点下标)"""
        rows = max(1, self.settings.numerics.CHUNK_ENTRIES // max(1, nodes.shape[0]))
        distances = np.empty(points.shape[0])
        nearest = np.empty(points.shape[0], dtype=int)
        for start in range(0, points.shape[0], rows):
            block = points[start:start + rows]
            diff = block[:, None, :] - nodes[None, :, :]
            squared = np.einsum("ijk,ijk->ij", diff, diff)
            closest = np.argmin(squared, axis=1)
            nearest[start:start + rows] = closest
            distances[start:start + rows] = np.sqrt(squared[np.arange(block.shape[0]), closest])
        return distances, nearest

    @staticmethod
    def _reject_on_curve(points: np.ndarray, distances: np.ndarray):
        if np.any(distances <= ON_CURVE_DISTANCE):
            bad = points[int(np.argmin(distances))]
            raise PointOnCurveError(f"目标点 ({bad[0]:.6g}, {bad[1]:.6g}) 落在边界曲线上")

    def foot_parameters(self, curve: BoundaryCurve, points,
                        start: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        目标点在解析曲线上的垂足参数与距离

        从最近节点出发对 |ψ(t) - x|² 做 Newton 迭代，每步不超过半个节点间距。

        Returns:
            (t0, |ψ(t0) - x|)，形状均为 (P,)
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if start is None:
            start = curve.params[self._nearest_nodes(points, curve.points)[1]]
        shape = curve.shape
        t = np.array(start, dtype=float)
        limit = 0.5 * curve.step
        for _ in range(FOOT_NEWTON_STEPS):
            gap = shape.position(t) - points
            d1 = shape.first_derivative(t)
            speed_sq = np.einsum("ij,ij->i", d1, d1)
            slope = np.einsum("ij,ij->i", gap, d1)
            curvature = speed_sq + np.einsum("ij,ij->i", gap, shape.second_derivative(t))
            t = t - np.clip(slope / np.where(curvature > 0, curvature, speed_sq), -limit, limit)
        return t, np.linalg.norm(shape.position(t) - points, axis=1)

    def _panel_nodes(self, curve: BoundaryCurve, densities: np.ndarray, feet: np.ndarray,
                     offsets: np.ndarray, weights: np.ndarray) -> QuadratureNodes:
        """以各垂足为中心平移分级面板规则，几何量直接取自解析形状"""
        params = feet[:, None] + offsets[None, :]
        d1 = curve.shape.first_derivative(params)
        speeds = np.linalg.norm(d1, axis=-1)
        return QuadratureNodes(
            params=params,
            points=curve.shape.position(params),
            normals=_rotate(d1) / speeds[..., None],
            weights=weights[None, :] * speeds,
            densities=trig_evaluate(densities, params),
        )

    def integrate_off_curve(self, curve: BoundaryCurve, densities, points,
                            integrand: OffCurveIntegrand) -> np.ndarray:
        """
        离边界求积 ∫ K(x, y) μ(y) dσ_y

        到最近节点的距离不小于 NEAR_FIELD_RATIO·(2π/N)·max|ψ'| 的目标点直接用节点上的
        梯形公式。其余目标点先求垂足 t0，再在 [t0 - π, t0 + π] 上用向 t0 几何加密的
        Gauss-Legendre 面板；被积函数在复参数平面上的奇点距实轴约 δ = 距离/max|ψ'|，
        最内层面板半宽取不超过 δ/2。远端面板长度同时受节点间距与密度带宽限制。

        Args:
            densities: 一个或多个边界函数，形状 (N,) 或 (K, N)
            points: 目标点 (P, 2)
            integrand: 见 OffCurveIntegrand

        Returns:
            形状 (K, P, ...) 的复数组

        Raises:
            PointOnCurveError: 目标点到曲线的距离不超过 1e-12
        """
        numerics = self.settings.numerics
        points = np.atleast_2d(np.asarray(points, dtype=float))
        densities = np.atleast_2d(np.asarray(densities, dtype=complex))
        max_speed = float(curve.speeds.max())

        distances, nearest = self._nearest_nodes(points, curve.points)
        self._reject_on_curve(points, distances)
        far = distances >= numerics.NEAR_FIELD_RATIO * curve.step * max_speed

        results: Optional[np.ndarray] = None

        def store(index: np.ndarray, values: np.ndarray):
            nonlocal results
            if results is None:
                results = np.zeros((densities.shape[0], points.shape[0]) + values.shape[2:], dtype=complex)
            results[:, index] = values

        trapezoid = QuadratureNodes(curve.params[None], curve.points[None], curve.normals[None],
                                    curve.weights[None], densities[:, None, :])
        far_index = np.flatnonzero(far)
        rows = max(1, min(numerics.TARGET_CHUNK, numerics.CHUNK_ENTRIES // curve.node_count))
        for start in range(0, far_index.size, rows):
            index = far_index[start:start + rows]
            block = points[index]
            store(index, integrand(trapezoid, block[:, None, :] - trapezoid.points, block))

        near_index = np.flatnonzero(~far)
        if near_index.size == 0:
            return results

        feet, gaps = self.foot_parameters(curve, points[near_index], curve.params[nearest[near_index]])
        self._reject_on_curve(points[near_index], gaps)
        _, wave_numbers = significant_wave_numbers(densities)
        bandwidth = (int(np.max(np.abs(wave_numbers))) if wave_numbers.size else 0) + GEOMETRY_BANDWIDTH
        panel_length = min(numerics.NEAR_PANEL_SPACINGS * curve.step, PANEL_PHASE / bandwidth)
        window = min(panel_length, 0.5 * np.pi)
        levels = np.maximum(0, np.ceil(np.log2(2.0 * window * max_speed / gaps))).astype(int)

        for level in np.unique(levels):
            offsets, weights = graded_panel_rule(int(level), window, panel_length, numerics.NEAR_PANEL_ORDER)
            group = np.flatnonzero(levels == level)
            rows = max(1, min(numerics.TARGET_CHUNK, numerics.CHUNK_ENTRIES // offsets.size))
            for start in range(0, group.size, rows):
                chunk = group[start:start + rows]
                nodes = self._panel_nodes(curve, densities, feet[chunk], offsets, weights)
                block = points[near_index[chunk]]
                store(near_index[chunk], integrand(nodes, block[:, None, :] - nodes.points, block))
        self.logger.debug(f"离边界求值: 梯形 {far_index.size} 点，分级面板 {near_index.size} 点"
                          f"（加密层数 {levels.min()}..{levels.max()}）")
        return results

    def _single_integrand(self, fs: FundamentalSolution) -> OffCurveIntegrand:
        def integrand(nodes, diff, block):
            return nodes.integrate(self._fundamental.evaluate_many(fs, diff))
        return integrand

    def _gradient_integrand(self, fs: FundamentalSolution) -> OffCurveIntegrand:
        def integrand(nodes, diff, block):
            return nodes.integrate(self._fundamental.gradient_many(fs, diff))
        return integrand

    def _double_integrand(self, fs: FundamentalSolution, coeffs: OperatorCoefficients) -> OffCurveIntegrand:
        def integrand(nodes, diff, block):
            a2_nu = nodes.normals @ coeffs.a2
            nu_a1 = nodes.normals @ coeffs.a1
            grad = self._fundamental.gradient_many(fs, diff)
            value = self._fundamental.evaluate_many(fs, diff)
            return nodes.integrate(-np.sum(grad * a2_nu, axis=-1) - nu_a1 * value)
        return integrand

    # endregion

    # region 单层位势

    def single_layer(self, fs: FundamentalSolution, curve: BoundaryCurve, mu, points=None) -> np.ndarray:
        """
        单层位势 v[∂Ω, S_a, μ]

        Args:
            points: None 表示在全部节点上求值；否则为离开曲线的点集 (P, 2)

        Raises:
            PointOnCurveError: 目标点落在曲线上
        """
        density = self._check_boundary_function(curve, mu)
        if points is None:
            return self.single_layer_matrix(fs, curve) @ density
        return self.integrate_off_curve(curve, density, points, self._single_integrand(fs))[0]

    def single_layer_gradient(self, fs: FundamentalSolution, curve: BoundaryCurve, mu, points) -> np.ndarray:
        """离边界点上的 ∇v，形状 (P, 2)"""
        density = self._check_boundary_function(curve, mu)
        return self.integrate_off_curve(curve, density, points, self._gradient_integrand(fs))[0]

    def single_layer_grad(self, fs: FundamentalSolution, curve: BoundaryCurve, mu, side: str = "pv") -> np.ndarray:
        """
        单层位势梯度的边界值，形状 (2, N)

        主值积分 G 由两个分量确定：切向分量 τ·G 等于边界迹 v 的弧长导数，
        a2ν(x)·G 等于弱奇异的 w_*[μ]。两侧极限为 ∇v^± = G ∓ ν μ / (2νᵗa2ν)。

        Args:
            side: 'plus'（内部）、'minus'（外部）或 'pv'
        """
        if side not in ("plus", "minus", "pv"):
            raise LayerLabError(f"未知的极限方向: {side}")
        coeffs = fs.coeffs
        density = self._check_boundary_function(curve, mu)
        trace = self.single_layer(fs, curve, density)
        trace_ds = self._geometry.spectral_dds(curve, trace)
        w_star = self.w_star_matrix(fs, coeffs, curve) @ density

        a2_nu = curve.normals @ coeffs.a2
        nu_a_nu = self.conormal_weight(coeffs, curve)
        tau_a_nu = np.einsum("ik,ik->i", curve.tangents, a2_nu)
        normal_part = (w_star - trace_ds * tau_a_nu) / nu_a_nu
        principal = (trace_ds[:, None] * curve.tangents + normal_part[:, None] * curve.normals).T

        if side == "pv":
            return principal
        jump = (density / (2.0 * nu_a_nu))[None, :] * curve.normals.T
        return principal - jump if side == "plus" else principal + jump

    # endregion

    # region 双层位势与 w_*

    def double_layer(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
                     mu, points=None) -> np.ndarray:
        """
        双层位势 w[∂Ω, a, S_a, μ]

        w(x) = -∫ μ Σ a_jl ν_l(y) ∂_j S_a(x-y) dσ - ∫ μ (ν(y)·a1) S_a(x-y) dσ
        """
        density = self._check_boundary_function(curve, mu)
        if points is None:
            return self.double_layer_matrix(fs, coeffs, curve) @ density
        return self.integrate_off_curve(curve, density, points, self._double_integrand(fs, coeffs))[0]

    def double_layer_kernel(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                            curve: BoundaryCurve) -> KernelSampler:
        """双层核 K(x, y_j) 的采样器，供核类范数估计使用"""
        a2_nu = curve.normals @ coeffs.a2
        nu_a1 = curve.normals @ coeffs.a1

        def sampler(x_points: np.ndarray, source_index: np.ndarray) -> np.ndarray:
            diff = np.asarray(x_points, dtype=float) - curve.points[source_index]
            grad = self._fundamental.gradient_many(fs, diff)
            value = self._fundamental.evaluate_many(fs, diff)
            return -np.einsum("...b,...b->...", grad, a2_nu[source_index]) - nu_a1[source_index] * value

        return sampler

    def w_star(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve, mu) -> np.ndarray:
        """w_*[∂Ω, a, S_a, μ](x) = ∫ DS_a(x-y)·a2ν(x) μ(y) dσ_y"""
        density = self._check_boundary_function(curve, mu)
        return self.w_star_matrix(fs, coeffs, curve) @ density

    # endregion

    # region 残差

    def _normal_offsets(self, curve: BoundaryCurve, offsets: Sequence[float], stride: int) -> Tuple[np.ndarray, np.ndarray]:
        index = np.arange(0, curve.node_count, max(1, int(stride)))
        h = np.asarray(offsets, dtype=float)
        if h.size < 2 or np.any(h <= 0) or np.any(np.diff(h) >= 0):
            raise LayerLabError(f"法向偏移必须为正且严格递减: {tuple(offsets)}")
        return index, h

    def _shifted_points(self, curve: BoundaryCurve, index: np.ndarray, h: np.ndarray, sign: float) -> np.ndarray:
        base = curve.points[index]
        normals = curve.normals[index]
        return np.concatenate([base + sign * step * normals for step in h])

    def double_layer_jump_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                                   curve: BoundaryCurve, mu, offsets: Optional[Sequence[float]] = None,
                                   stride: int = 1) -> ResidualReport:
        """
        双层位势跳跃关系 w^± = ±μ/2 + w 的残差

        在 x ∓ hν 处求 w，对每个节点沿偏移 h 外推到 0。
        """
        offsets = offsets or self.settings.numerics.RICHARDSON_OFFSETS
        density = self._check_boundary_function(curve, mu)
        index, h = self._normal_offsets(curve, offsets, stride)
        self._log_operation_start("双层位势跳跃残差", curve=curve.label(), offsets=tuple(h), nodes=index.size)

        on_curve = self.double_layer(fs, coeffs, curve, density)[index]
        inner = self.double_layer(fs, coeffs, curve, density, self._shifted_points(curve, index, h, -1.0))
        outer = self.double_layer(fs, coeffs, curve, density, self._shifted_points(curve, index, h, 1.0))
        inner_limit = richardson_extrapolate(h, inner.reshape(h.size, index.size))
        outer_limit = richardson_extrapolate(h, outer.reshape(h.size, index.size))

        plus = np.abs(inner_limit - (0.5 * density[index] + on_curve))
        minus = np.abs(outer_limit - (-0.5 * density[index] + on_curve))
        node_residuals = np.maximum(plus, minus)
        report = ResidualReport("double_layer_jump", float(node_residuals.max()), node_residuals,
                                {"plus": float(plus.max()), "minus": float(minus.max()),
                                 "scale": float(np.max(np.abs(on_curve)))})
        self._log_operation_success("双层位势跳跃残差", f"残差={report.max_residual:.3e}")
        return report

    def single_layer_jump_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                                   curve: BoundaryCurve, mu, offsets: Optional[Sequence[float]] = None,
                                   stride: int = 1) -> ResidualReport:
        """单层位势梯度跳跃关系 ∇v^± = ∓νμ/(2νᵗa2ν) + p.v. 的残差"""
        offsets = offsets or self.settings.numerics.RICHARDSON_OFFSETS
        density = self._check_boundary_function(curve, mu)
        index, h = self._normal_offsets(curve, offsets, stride)
        self._log_operation_start("单层位势梯度跳跃残差", curve=curve.label(), offsets=tuple(h), nodes=index.size)

        plus_side = self.single_layer_grad(fs, curve, density, "plus")[:, index].T
        minus_side = self.single_layer_grad(fs, curve, density, "minus")[:, index].T
        inner = self.single_layer_gradient(fs, curve, density, self._shifted_points(curve, index, h, -1.0))
        outer = self.single_layer_gradient(fs, curve, density, self._shifted_points(curve, index, h, 1.0))
        inner_limit = richardson_extrapolate(h, inner.reshape(h.size, index.size, 2))
        outer_limit = richardson_extrapolate(h, outer.reshape(h.size, index.size, 2))

        plus = np.linalg.norm(inner_limit - plus_side, axis=1)
        minus = np.linalg.norm(outer_limit - minus_side, axis=1)
        node_residuals = np.maximum(plus, minus)
        report = ResidualReport("single_layer_jump", float(node_residuals.max()), node_residuals,
                                {"plus": float(plus.max()), "minus": float(minus.max()),
                                 "scale": float(np.max(np.linalg.norm(plus_side, axis=1)))})
        self._log_operation_success("单层位势梯度跳跃残差", f"残差={report.max_residual:.3e}")
        return report

    def gauss_identity_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                                curve: BoundaryCurve) -> ResidualReport:
        """
        Gauss 恒等式：μ ≡ 1 的双层位势在内部检验点为 1、边界上为 1/2、外部检验点为 0

        仅对无低阶项的算子成立。
        """
        ones = np.ones(curve.node_count, dtype=complex)
        interior, exterior = self._geometry.preset_targets(curve)
        values = {
            "interior": (self.double_layer(fs, coeffs, curve, ones, interior), 1.0),
            "boundary": (self.double_layer(fs, coeffs, curve, ones), 0.5),
            "exterior": (self.double_layer(fs, coeffs, curve, ones, exterior), 0.0),
        }
        extras: Dict[str, float] = {}
        for name, (computed, expected) in values.items():
            extras[name] = float(np.max(np.abs(computed - expected)))
            extras[f"{name}_mean"] = float(np.mean(computed.real))
        worst = max(extras[name] for name in values)
        return ResidualReport("gauss_identity", worst, None, extras)

    def _gradient_identity_sides(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                                 curve: BoundaryCurve, density: np.ndarray, points: np.ndarray,
                                 step: float) -> Tuple[np.ndarray, np.ndarray]:
        """在离边界点上返回 (∇w 的中心差分, 由单层位势组装的右端)，形状均为 (P, 2)"""
        shifts = step * np.eye(2)
        stencil = np.concatenate([points + shifts[0], points - shifts[0], points + shifts[1], points - shifts[1]])
        values = self.double_layer(fs, coeffs, curve, density, stencil).reshape(4, -1)
        lhs = np.stack([(values[0] - values[1]) / (2.0 * step), (values[2] - values[3]) / (2.0 * step)], axis=1)

        m12 = self._geometry.tangential_M(curve, density, 1, 2)
        # M_11 = M_22 = 0
        tangential = {(0, 1): m12, (1, 0): -m12}
        nu_a1 = curve.normals @ coeffs.a1
        lower_grad = self.single_layer_gradient(fs, curve, nu_a1 * density, points)

        rhs = np.zeros_like(lhs)
        for r in range(2):
            j = 1 - r
            grad = self.single_layer_gradient(fs, curve, tangential[(r, j)], points)
            rhs[:, r] += grad @ coeffs.a2[:, j]
            weighted = curve.normals[:, r] * density
            rhs[:, r] += self.single_layer_gradient(fs, curve, weighted, points) @ coeffs.a1
            if coeffs.a0 != 0:
                rhs[:, r] += coeffs.a0 * self.single_layer(fs, curve, weighted, points)
            rhs[:, r] -= lower_grad[:, r]
        return lhs, rhs

    def double_layer_gradient_identity_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                                                curve: BoundaryCurve, mu,
                                                step: Optional[float] = None) -> ResidualReport:
        """
        梯度恒等式残差

        ∂_r w = Σ_{j,l} a_lj ∂_l v[M_rj[μ]] + Dv[ν_r μ]·a1 + a v[ν_r μ] - ∂_r v[(νᵗa1)μ]
        在内部与外部检验点上比较，左端由双层位势的中心差分给出。
        残差相对 max(1, max|∇w|) 归一。
        """
        step = step or self.settings.numerics.FD_STEP
        density = self._check_boundary_function(curve, mu)
        interior, exterior = self._geometry.preset_targets(curve)
        self._log_operation_start("梯度恒等式残差", curve=curve.label(), operator=coeffs.label())

        extras: Dict[str, float] = {}
        node_residuals = []
        for name, targets in (("interior", interior), ("exterior", exterior)):
            lhs, rhs = self._gradient_identity_sides(fs, coeffs, curve, density, targets, step)
            scale = max(1.0, float(np.max(np.abs(lhs))))
            residual = np.max(np.abs(lhs - rhs), axis=1) / scale
            extras[name] = float(residual.max())
            extras[f"{name}_scale"] = float(np.max(np.abs(lhs)))
            node_residuals.append(residual)

        worst = max(extras["interior"], extras["exterior"])
        report = ResidualReport("gradient_identity", worst, np.concatenate(node_residuals), extras)
        self._log_operation_success("梯度恒等式残差", f"残差={report.max_residual:.3e}")
        return report

    def w_star_identity_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients,
                                 curve: BoundaryCurve, mu) -> ResidualReport:
        """
        w_* 恒等式 w_* = Σ a_br Q[∂_b S_a∘Θ, ν_r, μ] - w[μ] - v[(a1·ν)μ] 的最大节点残差
        """
        density = self._check_boundary_function(curve, mu)
        kernels = self.pair_kernels(fs, curve)
        normals_dt = self.normal_dt(curve)

        rhs = np.zeros(curve.node_count, dtype=complex)
        for b in range(2):
            for r in range(2):
                if coeffs.a2[b, r] != 0:
                    q_matrix = kernels.q_matrix(curve.normals[:, r], normals_dt[:, r], b)
                    rhs += coeffs.a2[b, r] * (q_matrix @ density)
        rhs -= self.double_layer(fs, coeffs, curve, density)
        rhs -= self.single_layer(fs, curve, (curve.normals @ coeffs.a1) * density)

        lhs = self.w_star(fs, coeffs, curve, density)
        node_residuals = np.abs(lhs - rhs)
        return ResidualReport("wstar_identity", float(node_residuals.max()), node_residuals,
                              {"scale": float(np.max(np.abs(lhs)))})

    # endregion
