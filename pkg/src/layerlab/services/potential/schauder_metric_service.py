# -*- coding: utf-8 -*-
"""
Schauder 度量服务模块

广义 Hölder 模 r^α 与 ω_θ、节点对上的 Hölder 商，以及借助切向导数
递归定义的离散 Schauder 范数。距离一律取弦长（平面欧氏距离）。
"""

from typing import Optional

import numpy as np

from ...models.boundary_models import BoundaryCurve
from ...models.common import BadExponentError, DomainError
from ...models.kernel_models import EmbeddingCheck, ModulusKind, ModulusProperties, ModulusSpec
from ..numerics_service_base import NumericsServiceBase
from .boundary_geometry_service import BoundaryGeometryService

PROPERTY_GRID = np.geomspace(1e-12, 10.0, 400)


class SchauderMetricService(NumericsServiceBase):
    """Hölder 模与 Schauder 范数"""

    def __init__(self, geometry_service: Optional[BoundaryGeometryService] = None):
        super().__init__()
        self._geometry = geometry_service or BoundaryGeometryService()

    def omega(self, spec: ModulusSpec, r):
        """
        模函数值

        Power(α): r^α
        LogPower(θ): r ≤ r_θ = e^{-1/θ} 时为 r^θ|ln r|，之后取常数 r_θ^θ|ln r_θ| = e^{-1}/θ

        Raises:
            DomainError: r ≤ 0
        """
        values = np.asarray(r, dtype=float)
        if np.any(values <= 0):
            raise DomainError(f"模函数只对 r > 0 有定义，收到最小值 {values.min():g}")
        exponent = spec.exponent
        if spec.kind is ModulusKind.POWER:
            result = values ** exponent
        else:
            cap = np.exp(-1.0 / exponent)
            clipped = np.minimum(values, cap)
            result = clipped ** exponent * np.abs(np.log(clipped))
        return float(result) if np.ndim(result) == 0 else result

    def holder_quotient(self, curve: BoundaryCurve, f, spec: ModulusSpec) -> float:
        """max |f_i - f_j| / ω(|x_i - x_j|)，遍历全部不同节点对"""
        values = np.asarray(f, dtype=complex)
        points = curve.points
        n = curve.node_count
        rows = max(1, self.settings.numerics.CHUNK_ENTRIES // n)
        best = 0.0
        for start in range(0, n, rows):
            stop = min(n, start + rows)
            distance = np.linalg.norm(points[start:stop, None, :] - points[None, :, :], axis=2)
            mask = distance > 0
            if not np.any(mask):
                continue
            increment = np.abs(values[start:stop, None] - values[None, :])
            best = max(best, float(np.max(increment[mask] / self.omega(spec, distance[mask]))))
        return best

    def schauder_norm(self, curve: BoundaryCurve, f, m: int, spec: ModulusSpec) -> float:
        """
        离散 Schauder 范数

        m = 0: sup|f| + Hölder 商
        m ≥ 1: sup|f| + Σ_{l,r} ‖M_lr[f]‖_{m-1}
        """
        if m < 0:
            raise BadExponentError(f"Schauder 阶数必须非负，实际为 {m}")
        values = np.asarray(f, dtype=complex)
        sup = float(np.max(np.abs(values)))
        if m == 0:
            return sup + self.holder_quotient(curve, values, spec)
        total = sup
        for l in (1, 2):
            for r in (1, 2):
                if l == r:
                    continue
                derivative = self._geometry.tangential_M(curve, values, l, r)
                total += self.schauder_norm(curve, derivative, m - 1, spec)
        return total

    def modulus_properties(self, spec: ModulusSpec, grid=None) -> ModulusProperties:
        """在对数网格上检查单调性、0⁺ 处趋于 0 以及 (0,1) 内 r/ω(r) 有界"""
        grid = np.sort(np.asarray(PROPERTY_GRID if grid is None else grid, dtype=float))
        values = self.omega(spec, grid)
        monotone = bool(np.all(np.diff(values) >= -1e-15 * np.abs(values[1:])))
        inside = grid[grid < 1.0]
        sup_ratio = float(np.max(inside / self.omega(spec, inside))) if inside.size else 0.0
        return ModulusProperties(monotone, float(values[0]), sup_ratio)

    def embedding_check(self, curve: BoundaryCurve, f, alpha: float, beta: float) -> EmbeddingCheck:
        """
        嵌入不等式 q_β ≤ diam^{α-β}·q_α

        Raises:
            BadExponentError: 不满足 0 < β ≤ α ≤ 1
        """
        if not (0.0 < beta <= alpha <= 1.0):
            raise BadExponentError(f"要求 0 < beta <= alpha <= 1，实际 alpha={alpha}, beta={beta}")
        q_alpha = self.holder_quotient(curve, f, ModulusSpec.power(alpha))
        q_beta = self.holder_quotient(curve, f, ModulusSpec.power(beta))
        points = curve.points
        diameter = float(np.max(np.linalg.norm(points[:, None, :] - points[None, :, :], axis=2)))
        return EmbeddingCheck(q_alpha, q_beta, diameter, diameter ** (alpha - beta) * q_alpha)
