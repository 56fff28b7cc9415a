# -*- coding: utf-8 -*-
"""
交换子算子服务模块

实现辅助算子
    Q[∂_r S_a∘Θ, g, μ](x) = ∫ (g(x) - g(y)) ∂_r S_a(x-y) μ(y) dσ_y
与三线性算子 R[g, h, μ]，并组装两个切向导数公式的右端：
- Q 的切向导数公式（formula1）
- 双层位势的切向导数公式（wtg）
左端的切向导数一律用谱微分计算。

下标约定：对外接口 l, j, r 从 1 开始。
"""

from typing import Callable, Optional

import numpy as np

from ...models.boundary_models import BoundaryCurve
from ...models.common import LayerLabError, ResidualReport
from ...models.operator_models import FundamentalSolution, OperatorCoefficients
from ..numerics_service_base import NumericsServiceBase
from .layer_potential_service import LayerPotentialService


def _index(value: int) -> int:
    if value not in (1, 2):
        raise LayerLabError(f"下标必须为 1 或 2，实际为 {value}")
    return value - 1


class CommutatorService(NumericsServiceBase):
    """
    交换子算子服务

    Q 的 Nyström 矩阵复用基本解服务缓存的梯度核分解，只替换对角线。
    """

    def __init__(self, layer_service: Optional[LayerPotentialService] = None):
        super().__init__()
        self._layers = layer_service or LayerPotentialService()
        self._geometry = self._layers.geometry_service

    # region Q 与 R

    def q_op(self, fs: FundamentalSolution, curve: BoundaryCurve, g, mu, r: int) -> np.ndarray:
        """
        Q[∂_r S_a∘Θ, g, μ] 的节点值

        对角项取核的连续极限 (dg/ds)·(a2⁻¹τ)_r / (2π√det a2·τᵗa2⁻¹τ)。
        """
        g_values = self._check_boundary_function(curve, g, "g")
        density = self._check_boundary_function(curve, mu)
        g_dt = self._geometry.spectral_dt(curve, g_values)
        kernels = self._layers.pair_kernels(fs, curve)
        return kernels.q_matrix(g_values, g_dt, _index(r)) @ density

    def _q_with_dt(self, fs: FundamentalSolution, curve: BoundaryCurve, g: np.ndarray, g_dt: np.ndarray,
                   mu: np.ndarray, r: int) -> np.ndarray:
        """g 的参数导数已知时的 Q（法向分量使用解析导数）"""
        return self._layers.pair_kernels(fs, curve).q_matrix(g, g_dt, r) @ mu

    def q_op_at_points(self, fs: FundamentalSolution, curve: BoundaryCurve,
                       g_field: Callable[[np.ndarray], np.ndarray], mu, r: int, points) -> np.ndarray:
        """
        离边界点上的 Q^♯[∂_r S_a∘Θ, g̃, μ](x) = ∫ (g̃(x) - g̃(y)) ∂_r S_a(x-y) μ(y) dσ_y

        g_field 是 g 的全局延拓，接受形状 (..., 2) 的点集。
        """
        density = self._check_boundary_function(curve, mu)
        component = _index(r)
        fundamental = self._layers.fundamental_service

        def integrand(nodes, diff, block):
            grad = fundamental.gradient_many(fs, diff)[..., component]
            factor = np.asarray(g_field(block), dtype=complex)[:, None] - np.asarray(g_field(nodes.points))
            return nodes.integrate(factor * grad)

        return self._layers.integrate_off_curve(curve, density, points, integrand)[0]

    def r_op(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
             g, h, mu) -> np.ndarray:
        """
        R[g, h, μ] = Σ_r a_r {Q[∂_r S, gh, μ] - g·Q[∂_r S, h, μ] - Q[∂_r S, h, gμ]}
                     + a {g·v[hμ] - h·v[gμ]}
        """
        g_values = self._check_boundary_function(curve, g, "g")
        h_values = self._check_boundary_function(curve, h, "h")
        density = self._check_boundary_function(curve, mu)

        result = np.zeros(curve.node_count, dtype=complex)
        for r in range(2):
            if coeffs.a1[r] == 0:
                continue
            term = (self.q_op(fs, curve, g_values * h_values, density, r + 1)
                    - g_values * self.q_op(fs, curve, h_values, density, r + 1)
                    - self.q_op(fs, curve, h_values, g_values * density, r + 1))
            result += coeffs.a1[r] * term
        if coeffs.a0 != 0:
            result += coeffs.a0 * (g_values * self._layers.single_layer(fs, curve, h_values * density)
                                   - h_values * self._layers.single_layer(fs, curve, g_values * density))
        return result

    def r_op_direct(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
                    g, h, mu) -> np.ndarray:
        """
        R 的单积分形式
        ∫ {Σ a_r ∂_r S_a + a S_a}(x-y)·[g(x)h(y) - g(y)h(x)]·μ(y) dσ_y

        对角极限为 (g'h - gh')·(a1ᵗa2⁻¹ψ') / (2π√det a2·ψ'ᵗa2⁻¹ψ')。
        """
        g_values = self._check_boundary_function(curve, g, "g")
        h_values = self._check_boundary_function(curve, h, "h")
        density = self._check_boundary_function(curve, mu)
        kernels = self._layers.pair_kernels(fs, curve)
        reduced = fs.reduced

        bracket = g_values[:, None] * h_values[None, :] - g_values[None, :] * h_values[:, None]
        phi1, kernel = kernels.combine(
            c_single=coeffs.a0 * bracket,
            c_gradient=[coeffs.a1[0] * bracket, coeffs.a1[1] * bracket],
        )
        g_dt = self._geometry.spectral_dt(curve, g_values)
        h_dt = self._geometry.spectral_dt(curve, h_values)
        a2_inv_d1 = curve.d1 @ reduced.a2_inv
        q = np.einsum("ik,ik->i", curve.d1, a2_inv_d1)
        ratio_limit = (g_dt * h_values - g_values * h_dt) * (a2_inv_d1 @ coeffs.a1) / q
        matrix = kernels.nystrom(phi1, kernel, kernels.diagonal_limit(0.0, ratio_limit))
        return matrix @ density

    # endregion

    # region formula1

    def formula1_rhs(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
                     g, mu, l: int, j: int, r: int) -> np.ndarray:
        """
        M_lj[Q[∂_r S_a∘Θ, g, μ]] 的展开式右端

        记 c = νᵗa2ν，A_s = Σ_h a_sh ν_h / c，各项依次为：
          ν_l Q_r[D_{a,j} g, μ] - ν_j Q_r[D_{a,l} g, μ]
          + ν_l Q_r[g, Σ_s M_sj[A_s μ]] - ν_j Q_r[g, Σ_s M_sl[A_s μ]]
          + Σ_{s,h} a_sh ν_l {Q_s[ν_j, M_hr[g] μ / c] + Q_s[g, M_hr[ν_j μ / c]]}
          - Σ_{s,h} a_sh ν_j {Q_s[ν_l, M_hr[g] μ / c] + Q_s[g, M_hr[ν_l μ / c]]}
          - Σ_s a_s {ν_l Q_s[g, ν_j ν_r μ / c] - ν_j Q_s[g, ν_l ν_r μ / c]}
          - a {g [ν_l v[ν_j ν_r μ / c] - ν_j v[ν_l ν_r μ / c]] - [ν_l v[g ν_j ν_r μ / c] - ν_j v[g ν_l ν_r μ / c]]}
        """
        li, ji, ri = _index(l), _index(j), _index(r)
        g_values = self._check_boundary_function(curve, g, "g")
        density = self._check_boundary_function(curve, mu)
        geometry = self._geometry
        nu = curve.normals
        nu_dt = self._layers.normal_dt(curve)
        conormal = self._layers.conormal_weight(coeffs, curve)
        a2 = coeffs.a2
        a2_nu = nu @ a2

        def q(r_index, weight, weight_dt, values):
            return self._q_with_dt(fs, curve, weight, weight_dt, values, r_index)

        def q_g(r_index, values):
            return self.q_op(fs, curve, g_values, values, r_index + 1)

        def m(values, first, second):
            return geometry.tangential_M(curve, values, first + 1, second + 1)

        projected = geometry.projected_grad_Da(curve, g_values, coeffs)

        def normal_weight(index):
            return nu[:, index].astype(complex), nu_dt[:, index].astype(complex)

        def same_index_part(a_index, b_index):
            """以 ν_a 为外因子、b 为内部下标的一组项"""
            sum_m = sum(m(a2_nu[:, s] / conormal * density, s, b_index) for s in range(2))
            part = q(ri, projected[b_index], geometry.spectral_dt(curve, projected[b_index]), density)
            part = part + q_g(ri, sum_m)
            nu_b, nu_b_dt = normal_weight(b_index)
            for s in range(2):
                for h in range(2):
                    if a2[s, h] == 0:
                        continue
                    inner = (q(s, nu_b, nu_b_dt, m(g_values, h, ri) * density / conormal)
                             + q_g(s, m(nu_b * density / conormal, h, ri)))
                    part = part + a2[s, h] * inner
            for s in range(2):
                if coeffs.a1[s] != 0:
                    part = part - coeffs.a1[s] * q_g(s, nu[:, b_index] * nu[:, ri] * density / conormal)
            if coeffs.a0 != 0:
                weighted = nu[:, b_index] * nu[:, ri] * density / conormal
                part = part - coeffs.a0 * (g_values * self._layers.single_layer(fs, curve, weighted)
                                           - self._layers.single_layer(fs, curve, g_values * weighted))
            return nu[:, a_index] * part

        if li == ji:
            return np.zeros(curve.node_count, dtype=complex)
        return same_index_part(li, ji) - same_index_part(ji, li)

    def formula1_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
                          g, mu, l: int, j: int, r: int) -> ResidualReport:
        """max |M_lj[Q[∂_r S_a∘Θ, g, μ]] - 右端|，左端用谱切向导数"""
        self._log_operation_start("formula1 残差", curve=curve.label(), indices=(l, j, r))
        lhs = self._geometry.tangential_M(curve, self.q_op(fs, curve, g, mu, r), l, j)
        rhs = self.formula1_rhs(fs, coeffs, curve, g, mu, l, j, r)
        node_residuals = np.abs(lhs - rhs)
        report = ResidualReport("formula1", float(node_residuals.max()), node_residuals,
                                {"scale": float(np.max(np.abs(lhs)))})
        self._log_operation_success("formula1 残差", f"残差={report.max_residual:.3e}")
        return report

    # endregion

    # region 双层位势的切向导数

    def wtg_rhs(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
                mu, l: int, j: int) -> np.ndarray:
        """
        M_lj[w[μ]] 的展开式右端

          w[M_lj μ] + Σ_{b,r} a_br {Q_b[ν_l, M_jr μ] - Q_b[ν_j, M_lr μ]}
          + ν_l Q_j[ν·a1, μ] - ν_j Q_l[ν·a1, μ]
          + (ν·a1) {Q_l[ν_j, μ] - Q_j[ν_l, μ]}
          - (ν·a1) v[M_lj μ] + v[(ν·a1) M_lj μ]
          + R[ν_l, ν_j, μ]
        """
        li, ji = _index(l), _index(j)
        density = self._check_boundary_function(curve, mu)
        if li == ji:
            return np.zeros(curve.node_count, dtype=complex)

        geometry = self._geometry
        layers = self._layers
        nu = curve.normals.astype(complex)
        nu_dt = layers.normal_dt(curve).astype(complex)
        nu_a1 = curve.normals @ coeffs.a1
        nu_a1_dt = nu_dt @ coeffs.a1

        def q(b, weight_index, values):
            return self._q_with_dt(fs, curve, nu[:, weight_index], nu_dt[:, weight_index], values, b)

        def m(first, second):
            return geometry.tangential_M(curve, density, first + 1, second + 1)

        m_lj = m(li, ji)
        result = layers.double_layer(fs, coeffs, curve, m_lj)
        for b in range(2):
            for r in range(2):
                if coeffs.a2[b, r] != 0:
                    result += coeffs.a2[b, r] * (q(b, li, m(ji, r)) - q(b, ji, m(li, r)))

        if np.any(coeffs.a1 != 0):
            result += nu[:, li] * self._q_with_dt(fs, curve, nu_a1, nu_a1_dt, density, ji)
            result -= nu[:, ji] * self._q_with_dt(fs, curve, nu_a1, nu_a1_dt, density, li)
            result += nu_a1 * (q(li, ji, density) - q(ji, li, density))
            result -= nu_a1 * layers.single_layer(fs, curve, m_lj)
            result += layers.single_layer(fs, curve, nu_a1 * m_lj)
        result += self.r_op(fs, coeffs, curve, nu[:, li], nu[:, ji], density)
        return result

    def wtg_residual(self, fs: FundamentalSolution, coeffs: OperatorCoefficients, curve: BoundaryCurve,
                     mu, l: int, j: int) -> ResidualReport:
        """max |谱 M_lj[w[μ]] - wtg_rhs|"""
        self._log_operation_start("wtg 残差", curve=curve.label(), indices=(l, j))
        trace = self._layers.double_layer(fs, coeffs, curve, mu)
        lhs = self._geometry.tangential_M(curve, trace, l, j)
        node_residuals = np.abs(lhs - self.wtg_rhs(fs, coeffs, curve, mu, l, j))
        report = ResidualReport("wtg", float(node_residuals.max()), node_residuals,
                                {"scale": float(np.max(np.abs(lhs)))})
        self._log_operation_success("wtg 残差", f"残差={report.max_residual:.3e}")
        return report

    # endregion
