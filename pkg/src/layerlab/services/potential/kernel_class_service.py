# -*- coding: utf-8 -*-
"""
核类服务模块

处理 K_{γ1,γ2,γ3} 核类：
- 核范数的抽样估计（节点对上的第一上确界，可容许三元组上的第二上确界）
- 一般边界积分算子 u[∂Ω, K, μ] 的求积（排除对角或 Kress 对数分解）
- 乘积核 H[Z, g](x, y) = (g(x) - g(y))·Z(x, y) 及其范数传递上界
- 由核类指数预测输出的 Hölder 模

核以采样器 K(目标点 (..., 2), 源节点下标 (...)) 的形式传入。
"""

from typing import Callable, Iterator, Optional, Tuple

import numpy as np

from ...models.boundary_models import BoundaryCurve
from ...models.common import DomainError, LayerLabError, OutOfRangeError, PointOnCurveError
from ...models.kernel_models import (
    DiagonalRule, DiagonalRuleKind, KernelClassParams, KernelNormEstimate, KernelSampler, ModulusSpec
)
from ...models.operator_models import FundamentalSolution
from ...utils.quadrature_utils import kress_matrix
from ..numerics_service_base import NumericsServiceBase
from .fundamental_solution_service import FundamentalSolutionService

ON_CURVE_DISTANCE = 1e-12
RANGE_TOLERANCE = 1e-12


def _pair_order(node_count: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    全部有序节点对 (i, k), i ≠ k 的抽样顺序

    按循环下标差 d = 1..N-1 分组，组内用固定种子打乱。
    任意前缀都是更长前缀的子集，预算增大时估计值单调不减。
    """
    rng = np.random.default_rng(seed)
    first, second = [], []
    base = np.arange(node_count)
    for offset in range(1, node_count):
        order = rng.permutation(node_count)
        first.append(base[order])
        second.append((base[order] + offset) % node_count)
    return np.concatenate(first), np.concatenate(second)


class KernelClassService(NumericsServiceBase):
    """
    核类服务

    范数估计只给出真实上确界的下界；samples_used 供调用方判断抽样是否饱和。
    """

    def __init__(self, fundamental_service: Optional[FundamentalSolutionService] = None):
        super().__init__()
        self._fundamental = fundamental_service or FundamentalSolutionService()

    # region 核采样器

    @staticmethod
    def constant_kernel(value: complex = 1.0) -> KernelSampler:
        """K(x, y) ≡ value"""
        def sampler(x_points: np.ndarray, source_index: np.ndarray) -> np.ndarray:
            return np.full(np.shape(source_index), value, dtype=complex)
        return sampler

    def single_layer_kernel(self, fs: FundamentalSolution, curve: BoundaryCurve) -> KernelSampler:
        """K(x, y_j) = S_a(x - y_j)"""
        def sampler(x_points: np.ndarray, source_index: np.ndarray) -> np.ndarray:
            diff = np.asarray(x_points, dtype=float) - curve.points[source_index]
            return self._fundamental.evaluate_many(fs, diff)
        return sampler

    def gradient_kernel(self, fs: FundamentalSolution, curve: BoundaryCurve, b: int) -> KernelSampler:
        """K(x, y_j) = ∂_b S_a(x - y_j)，b 取 1 或 2"""
        if b not in (1, 2):
            raise LayerLabError(f"梯度分量必须为 1 或 2，实际为 {b}")

        def sampler(x_points: np.ndarray, source_index: np.ndarray) -> np.ndarray:
            diff = np.asarray(x_points, dtype=float) - curve.points[source_index]
            return self._fundamental.gradient_many(fs, diff)[..., b - 1]
        return sampler

    def build_H(self, Z: KernelSampler, g_field: Callable[[np.ndarray], np.ndarray],
                curve: BoundaryCurve) -> KernelSampler:
        """
        乘积核 H[Z, g](x, y_j) = (g(x) - g(y_j))·Z(x, y_j)

        Args:
            Z: 基础核
            g_field: g 的全局延拓，接受 (..., 2) 点集
            curve: 源节点所在曲线
        """
        def sampler(x_points: np.ndarray, source_index: np.ndarray) -> np.ndarray:
            x_points = np.asarray(x_points, dtype=float)
            factor = (np.asarray(g_field(x_points), dtype=complex)
                      - np.asarray(g_field(curve.points[source_index]), dtype=complex))
            return factor * Z(x_points, source_index)
        return sampler

    # endregion

    # region 核范数

    def _chunks(self, total: int, width: int) -> Iterator[slice]:
        rows = max(1, self.settings.numerics.CHUNK_ENTRIES // max(1, width))
        for start in range(0, total, rows):
            yield slice(start, min(total, start + rows))

    def kernel_norm_estimate(self, K: KernelSampler, curve: BoundaryCurve, params: KernelClassParams,
                             sample_budget: int, seed: int = 0) -> KernelNormEstimate:
        """
        核类范数的抽样估计

        sup1 = max |x-y|^γ1·|K(x,y)|，在节点对上取；N² 不超过预算时取全部节点对。
        sup2 = max |x'-y|^γ2 / |x'-x''|^γ3 · |K(x',y) - K(x'',y)|，
        取前 budget // N 个节点对 (x', x'')，y 遍历满足 |x'-y| ≥ 2|x'-x''| 的全部节点。

        Args:
            K: 核采样器（对角线以外有定义）
            curve: 边界曲线
            params: 核类指数
            sample_budget: 抽样预算（比较次数的量级）
            seed: 节点对抽样顺序的随机种子
        """
        if sample_budget <= 0:
            raise LayerLabError(f"抽样预算必须为正，实际为 {sample_budget}")
        n = curve.node_count
        points = curve.points
        first, second = _pair_order(n, seed)
        total_pairs = first.size
        self._log_operation_start("核范数估计", curve=curve.label(), params=params, budget=sample_budget)

        pair_count = total_pairs if n * n <= sample_budget else min(total_pairs, sample_budget)
        if pair_count < total_pairs:
            self.logger.info(f"核范数第一上确界按预算抽样: {pair_count}/{total_pairs} 个节点对")
        sup1 = 0.0
        for block in self._chunks(pair_count, 1):
            i, k = first[block], second[block]
            distance = np.linalg.norm(points[i] - points[k], axis=1)
            values = np.abs(K(points[i], k))
            sup1 = max(sup1, float(np.max(distance ** params.gamma1 * values)))

        triple_pairs = min(total_pairs, max(1, sample_budget // n))
        sup2 = 0.0
        triples = 0
        all_sources = np.arange(n)
        for block in self._chunks(triple_pairs, n):
            i, k = first[block], second[block]
            base = np.linalg.norm(points[i] - points[k], axis=1)
            to_sources = np.linalg.norm(points[i][:, None, :] - points[None, :, :], axis=2)
            admissible = (to_sources >= 2.0 * base[:, None])
            admissible &= (all_sources[None, :] != i[:, None]) & (all_sources[None, :] != k[:, None])
            rows, sources = np.nonzero(admissible)
            if rows.size == 0:
                continue
            increment = np.abs(K(points[i[rows]], sources) - K(points[k[rows]], sources))
            weight = to_sources[rows, sources] ** params.gamma2 / base[rows] ** params.gamma3
            sup2 = max(sup2, float(np.max(weight * increment)))
            triples += rows.size

        estimate = KernelNormEstimate(sup1, sup2, pair_count + triples, pair_count, triples)
        self._log_operation_success("核范数估计", f"sup1={sup1:.6g}, sup2={sup2:.6g}, 样本={estimate.samples_used}")
        return estimate

    def h_transfer_bound(self, z_norm, g_holder_norm: float, n: int = 2) -> float:
        """
        ‖H[Z, g]‖ 的传递上界 2^n·‖Z‖·‖g‖

        Args:
            z_norm: Z 的范数（数值或 KernelNormEstimate）
            g_holder_norm: g 的 Hölder 范数 sup|g| + |g|_θ
        """
        value = z_norm.norm if isinstance(z_norm, KernelNormEstimate) else float(z_norm)
        return float(2 ** n * value * g_holder_norm)

    # endregion

    # region 边界积分算子

    def apply_kernel(self, K: KernelSampler, curve: BoundaryCurve, mu,
                     rule: Optional[DiagonalRule] = None, points=None) -> np.ndarray:
        """
        u[∂Ω, K, μ](x) = ∫ K(x, y) μ(y) dσ_y

        Args:
            rule: 节点上的对角处理规则，默认 exclude
            points: None 表示在节点上求值；否则为离开曲线的点集，用普通梯形

        Raises:
            PointOnCurveError: 目标点落在曲线上
        """
        density = self._check_boundary_function(curve, mu)
        n = curve.node_count
        sources = np.arange(n)

        if points is not None:
            targets = np.atleast_2d(np.asarray(points, dtype=float))
            result = np.zeros(targets.shape[0], dtype=complex)
            for block in self._chunks(targets.shape[0], n):
                chunk = targets[block]
                distance = np.linalg.norm(chunk[:, None, :] - curve.points[None, :, :], axis=2)
                if np.any(distance <= ON_CURVE_DISTANCE):
                    raise PointOnCurveError("目标点落在边界曲线上")
                values = K(np.repeat(chunk[:, None, :], n, axis=1), np.broadcast_to(sources, (chunk.shape[0], n)))
                result[block] = values @ (density * curve.weights)
            return result

        rule = rule or DiagonalRule.exclude()
        if rule.kind is DiagonalRuleKind.LOG_SPLIT:
            t = curve.params[:, None]
            s = curve.params[None, :]
            phi1 = np.broadcast_to(np.asarray(rule.phi1(t, s), dtype=complex), (n, n))
            phi2 = np.broadcast_to(np.asarray(rule.phi2(t, s), dtype=complex), (n, n))
            matrix = (kress_matrix(n) * phi1 + (2.0 * np.pi / n) * phi2) * curve.speeds[None, :]
            return matrix @ density

        result = np.zeros(n, dtype=complex)
        for block in self._chunks(n, n):
            rows = np.arange(n)[block]
            row_index, col_index = np.nonzero(rows[:, None] != sources[None, :])
            values = np.zeros((rows.size, n), dtype=complex)
            values[row_index, col_index] = K(curve.points[rows[row_index]], col_index)
            result[block] = values @ (density * curve.weights)
        return result

    def single_layer_rule(self, fs: FundamentalSolution, curve: BoundaryCurve) -> DiagonalRule:
        """单层核 S_a(x-y) 的 Kress 对数分解规则"""
        split = np.vectorize(lambda t, s: self._fundamental.log_split(fs, curve, t, s), otypes=[complex, complex])
        return DiagonalRule.log_split(lambda t, s: split(t, s)[0], lambda t, s: split(t, s)[1])

    # endregion

    # region Hölder 模的传递

    def modulus_transfer_predict(self, params: KernelClassParams, n: int = 2,
                                 alpha: Optional[float] = None, beta: Optional[float] = None) -> ModulusSpec:
        """
        预测 u[∂Ω, K, ·] 作用在有界密度上时输出的 Hölder 模

        不带 alpha/beta 时：
          γ1 ∈ [n-2, n-1), γ2 > n-1, γ3 ∈ (0,1], (n-1)-γ2+γ3 ∈ (0,1]
              -> r^{min{(n-1)-γ1, (n-1)-γ2+γ3}}
          γ1 ∈ [n-2, n-1), γ2 = n-1, γ3 ∈ (0,1]
              -> max{r^{(n-1)-γ1}, ω_γ3}
        带 alpha/beta 时（要求 γ1 = (n-1)-α）按 γ2-β 与 n-1 的大小关系分三种情况。
        复合模 max{r^δ, ω_θ} 以等价的单一模返回：δ < θ 时为 r^δ，否则为 ω_θ。

        Raises:
            DomainError: alpha 或 beta 不在开区间 (0, 1) 内
            OutOfRangeError: 不满足任何一种情况
        """
        g1, g2, g3 = params.gamma1, params.gamma2, params.gamma3
        dim = n - 1
        if not (0.0 < g3 <= 1.0):
            raise OutOfRangeError(f"γ3 必须位于 (0, 1]，实际为 {g3}")

        if alpha is not None or beta is not None:
            return self._predict_shifted(params, dim, alpha, beta)

        if not (dim - 1 <= g1 < dim):
            raise OutOfRangeError(f"γ1={g1} 不在 [{dim - 1}, {dim}) 内")
        if abs(g2 - dim) <= RANGE_TOLERANCE:
            return self._composite(dim - g1, g3)
        if g2 > dim:
            gain = dim - g2 + g3
            if not (0.0 < gain <= 1.0 + RANGE_TOLERANCE):
                raise OutOfRangeError(f"(n-1)-γ2+γ3={gain:g} 不在 (0, 1] 内")
            return ModulusSpec.power(min(dim - g1, gain, 1.0))
        raise OutOfRangeError(f"γ2={g2} 小于 n-1={dim}，无可用的模预测")

    def _predict_shifted(self, params: KernelClassParams, dim: int,
                         alpha: Optional[float], beta: Optional[float]) -> ModulusSpec:
        if alpha is None or beta is None:
            raise OutOfRangeError("alpha 与 beta 必须同时给出")
        if not (0.0 < alpha < 1.0) or not (0.0 < beta < 1.0):
            raise DomainError(f"alpha={alpha}, beta={beta} 必须位于 (0, 1) 内")
        if abs(params.gamma1 - (dim - alpha)) > RANGE_TOLERANCE:
            raise OutOfRangeError(f"要求 γ1 = (n-1)-alpha = {dim - alpha:g}，实际为 {params.gamma1:g}")

        shifted = params.gamma2 - beta
        gain = min(alpha + beta, 1.0)
        if abs(shifted - dim) <= RANGE_TOLERANCE:
            return self._composite(gain, params.gamma3)
        if shifted < dim:
            return ModulusSpec.power(min(gain, params.gamma3))
        exponent = min(gain, params.gamma3 + dim - shifted)
        if exponent <= 0:
            raise OutOfRangeError(f"预测指数 {exponent:g} 不为正")
        return ModulusSpec.power(exponent)

    @staticmethod
    def _composite(delta: float, theta: float) -> ModulusSpec:
        """max{r^δ, ω_θ} 在有界集上等价的单一模"""
        if delta <= 0:
            raise OutOfRangeError(f"预测指数 {delta:g} 不为正")
        if delta < theta:
            return ModulusSpec.power(min(delta, 1.0))
        return ModulusSpec.log_power(theta)

    # endregion
