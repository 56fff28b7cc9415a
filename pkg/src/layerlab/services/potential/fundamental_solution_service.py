# -*- coding: utf-8 -*-
"""
基本解服务模块

构造并求值 P[a,D] 的基本解

    S_a(x) = det_factor · e^{mu·x} · w_kappa(|T⁻¹x|)

及其梯度，并给出沿边界曲线的 Kress 对数分解：

    S_a(ψ(t) - ψ(s)) = phi1(t,s) · ln(4 sin²((t-s)/2)) + phi2(t,s)

对全部节点对，CurvePairKernels 预先组装 S_a、∂₁S_a、∂₂S_a 三个基本核的分解，
各边界算子都是它们带光滑系数的组合，只需各自补上对角线的解析极限。
"""

from collections import OrderedDict
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from ...models.boundary_models import BoundaryCurve
from ...models.common import DomainError, UnsupportedKappaError
from ...models.operator_models import (
    FundamentalSolution, OperatorCoefficients, ProfileTag, RadialProfileKind
)
from ...utils.quadrature_utils import kress_matrix
from ...utils.specfun_utils import (
    log_split_profile, profile_origin_constant, radial_profile_ratio
)
from ..numerics_service_base import NumericsServiceBase
from .operator_reduction_service import OperatorReductionService

KAPPA_IMAG_TOLERANCE = 1e-14
KAPPA_ZERO_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class CurvePairKernels:
    """
    曲线全部节点对上的基本核分解

    属性说明：
        log_matrix: L_ij = ln(4 sin²((t_i - t_j)/2))，对角为 0
        single: S_a(x_i - x_j)，对角为 0
        gradient: ∂_b S_a(x_i - x_j)，形状 (2, N, N)，对角为 0
        phi1_single / phi1_gradient: 对数系数（含对角线的连续极限）
        diagonal_log: Λ_i = ln(ψ'ᵗ a2⁻¹ ψ')
        origin_constant: G(0)
        kress: Kress 对数权的循环矩阵
    """
    fs: FundamentalSolution
    curve: BoundaryCurve
    log_matrix: np.ndarray
    single: np.ndarray
    gradient: np.ndarray
    phi1_single: np.ndarray
    phi1_gradient: np.ndarray
    diagonal_log: np.ndarray
    origin_constant: float
    kress: np.ndarray

    def combine(self, c_single=None, c_gradient=None) -> Tuple[np.ndarray, np.ndarray]:
        """
        组合核 K = c_S·S + Σ_b c_b·∂_b S 的 (phi1, K)

        c_single 为标量或 (N, N) 数组，c_gradient 为长度 2 的序列（元素为标量或 (N, N) 数组）。
        """
        n = self.curve.node_count
        phi1 = np.zeros((n, n), dtype=complex)
        kernel = np.zeros((n, n), dtype=complex)
        if c_single is not None:
            phi1 += c_single * self.phi1_single
            kernel += c_single * self.single
        if c_gradient is not None:
            for b in range(2):
                phi1 += c_gradient[b] * self.phi1_gradient[b]
                kernel += c_gradient[b] * self.gradient[b]
        return phi1, kernel

    def diagonal_limit(self, lower_order_weight, ratio_limit) -> np.ndarray:
        """
        组合核光滑部分在对角线上的值

        phi2_ii = det_factor·[(c_S + Σ c_b mu_b)(Λ_i/4π + G(0)) + lim/2π]，
        其中 lim 为 Σ_b c_b (a2⁻¹D)_b / σ 沿曲线的极限。
        """
        det_factor = self.fs.reduced.det_factor
        return det_factor * (np.asarray(lower_order_weight) * (self.diagonal_log / (4.0 * np.pi) + self.origin_constant)
                             + np.asarray(ratio_limit) / (2.0 * np.pi))

    def nystrom(self, phi1: np.ndarray, kernel: np.ndarray, diagonal_phi2) -> np.ndarray:
        """
        Kress-Nyström 矩阵 A_ij = (R_ij·phi1_ij + (2π/N)·phi2_ij)·|ψ'(t_j)|

        非对角 phi2 = K - phi1·L，对角 phi2 由 diagonal_phi2 给出。
        """
        n = self.curve.node_count
        phi2 = kernel - phi1 * self.log_matrix
        phi2[np.diag_indices(n)] = diagonal_phi2
        return (self.kress * phi1 + (2.0 * np.pi / n) * phi2) * self.curve.speeds[None, :]

    @cached_property
    def gradient_blocks(self) -> np.ndarray:
        """
        ∂_b S_a 的 Kress-Nyström 矩阵（对角置 0），形状 (2, N, N)

        与 (g_i - g_j) 等在对角处为 0 的因子逐元相乘后，只需补上对角的解析极限。
        """
        n = self.curve.node_count
        blocks = np.stack([self.nystrom(self.phi1_gradient[b], self.gradient[b], 0.0) for b in range(2)])
        blocks[:, np.arange(n), np.arange(n)] = 0.0
        return blocks

    def q_matrix(self, g: np.ndarray, g_dt: np.ndarray, r: int) -> np.ndarray:
        """
        Q[∂_r S_a∘Θ, g, ·] 的 Nyström 矩阵

        非对角为 (g_i - g_j)·∂_r S_a 的 Kress 矩阵元；对角为核的连续极限
        det_factor·g'(t)·(a2⁻¹ψ')_r / (2π·ψ'ᵗa2⁻¹ψ') 乘以梯形权。

        Args:
            g: 节点值
            g_dt: g 的参数导数
            r: 0 或 1
        """
        reduced = self.fs.reduced
        curve = self.curve
        n = curve.node_count
        matrix = (g[:, None] - g[None, :]) * self.gradient_blocks[r]
        a2_inv_d1 = curve.d1 @ reduced.a2_inv
        q = np.einsum("ik,ik->i", curve.d1, a2_inv_d1)
        limit = reduced.det_factor * g_dt * a2_inv_d1[:, r] / (2.0 * np.pi * q)
        matrix[np.diag_indices(n)] = (2.0 * np.pi / n) * limit * curve.speeds
        return matrix


class FundamentalSolutionService(NumericsServiceBase):
    """
    基本解服务

    基本解对象不可变，求值方法是纯函数；节点对分解按 (基本解, 曲线) 缓存。
    """

    def __init__(self, reduction_service: Optional[OperatorReductionService] = None):
        super().__init__()
        self._reduction = reduction_service or OperatorReductionService()
        self._pair_cache: "OrderedDict[Tuple[int, int], CurvePairKernels]" = OrderedDict()

    # region 构造

    def build(self, coeffs: OperatorCoefficients) -> FundamentalSolution:
        """
        构造基本解

        Raises:
            UnsupportedKappaError: 约化常数 kappa 带有非零虚部
        """
        self._log_operation_start("构造基本解", operator=coeffs.label())
        reduced = self._reduction.reduce(coeffs)
        kappa = complex(reduced.kappa)
        if abs(kappa.imag) > KAPPA_IMAG_TOLERANCE * max(1.0, abs(kappa)):
            error = UnsupportedKappaError(f"约化常数 kappa={kappa} 不是实数，无法构造径向剖面")
            self._log_operation_error("构造基本解", error)
            raise error

        kappa_real = kappa.real
        if abs(kappa_real) <= KAPPA_ZERO_TOLERANCE:
            profile = RadialProfileKind(ProfileTag.LOG)
        elif kappa_real > 0:
            profile = RadialProfileKind(ProfileTag.OSCILLATORY, float(np.sqrt(kappa_real)))
        else:
            profile = RadialProfileKind(ProfileTag.DECAYING, float(np.sqrt(-kappa_real)))

        fs = FundamentalSolution(coeffs, reduced, profile)
        self._log_operation_success("构造基本解", f"剖面={profile.tag.value}, 波数={profile.wave_number:g}")
        return fs

    # endregion

    # region 求值

    def _check_nonzero(self, points: np.ndarray) -> None:
        if np.any(np.all(points == 0.0, axis=-1)):
            raise DomainError("基本解在原点无定义")

    def evaluate_many(self, fs: FundamentalSolution, points) -> np.ndarray:
        """在形状 (..., 2) 的差向量上求 S_a"""
        points = np.asarray(points, dtype=float)
        self._check_nonzero(points)
        reduced = fs.reduced
        rho = np.linalg.norm(points @ reduced.T_inv.T, axis=-1)
        w, _ = radial_profile_ratio(fs.kappa, rho)
        drift = np.exp(points @ reduced.mu)
        return reduced.det_factor * drift * w

    def gradient_many(self, fs: FundamentalSolution, points) -> np.ndarray:
        """在形状 (..., 2) 的差向量上求 ∇S_a，返回 (..., 2)"""
        points = np.asarray(points, dtype=float)
        self._check_nonzero(points)
        reduced = fs.reduced
        rho = np.linalg.norm(points @ reduced.T_inv.T, axis=-1)
        w, ratio = radial_profile_ratio(fs.kappa, rho)
        drift = np.exp(points @ reduced.mu)
        a2_inv_x = points @ reduced.a2_inv
        return (reduced.det_factor * drift)[..., None] * (reduced.mu * w[..., None] + ratio[..., None] * a2_inv_x)

    def evaluate(self, fs: FundamentalSolution, x) -> complex:
        """
        S_a(x) = det_factor · e^{mu·x} · w_kappa(|T⁻¹x|)

        Raises:
            DomainError: x = 0
        """
        return complex(self.evaluate_many(fs, np.asarray(x, dtype=float)))

    def gradient(self, fs: FundamentalSolution, x) -> np.ndarray:
        """
        ∇S_a(x) = det_factor·e^{mu·x}·[mu·w(ρ) + (w'(ρ)/ρ)·a2⁻¹x], ρ = |T⁻¹x|

        Raises:
            DomainError: x = 0
        """
        return self.gradient_many(fs, np.asarray(x, dtype=float))

    # endregion

    # region 对数分解

    def log_split(self, fs: FundamentalSolution, curve: BoundaryCurve, t: float, s: float) -> Tuple[complex, complex]:
        """
        S_a(ψ(t) - ψ(s)) = phi1·ln(4sin²((t-s)/2)) + phi2

        t = s (mod 2π) 时返回连续极限：
        phi1 = det_factor/4π，phi2 = det_factor·(ln(ψ'ᵗa2⁻¹ψ')/4π + G(0))。
        """
        reduced = fs.reduced
        shape = curve.shape
        det_factor = reduced.det_factor
        if np.isclose(np.sin((t - s) / 2.0), 0.0, atol=1e-15):
            tangent = shape.first_derivative(t)
            q = float(tangent @ reduced.a2_inv @ tangent)
            phi1 = det_factor / (4.0 * np.pi)
            phi2 = det_factor * (np.log(q) / (4.0 * np.pi) + profile_origin_constant(fs.kappa))
            return complex(phi1), complex(phi2)

        diff = shape.position(t) - shape.position(s)
        sigma = float(diff @ reduced.a2_inv @ diff)
        f_val, _ = log_split_profile(fs.kappa, sigma)
        phi1 = det_factor * np.exp(diff @ reduced.mu) * f_val / (4.0 * np.pi)
        log_factor = np.log(4.0 * np.sin((t - s) / 2.0) ** 2)
        phi2 = self.evaluate(fs, diff) - phi1 * log_factor
        return complex(phi1), complex(phi2)

    def curve_pair_kernels(self, fs: FundamentalSolution, curve: BoundaryCurve) -> CurvePairKernels:
        """
        组装曲线全部节点对上的基本核分解（按对象身份缓存）
        """
        key = (id(fs), id(curve))
        cached = self._pair_cache.get(key)
        if cached is not None and cached.fs is fs and cached.curve is curve:
            self._pair_cache.move_to_end(key)
            return cached

        self._log_operation_start("组装节点对核分解", curve=curve.label(), operator=fs.coeffs.label())
        kernels = self._assemble_pair_kernels(fs, curve)

        self._pair_cache[key] = kernels
        while len(self._pair_cache) > self.settings.numerics.KERNEL_CACHE_SIZE:
            self._pair_cache.popitem(last=False)
        self._log_operation_success("组装节点对核分解", f"N={curve.node_count}")
        return kernels

    def _assemble_pair_kernels(self, fs: FundamentalSolution, curve: BoundaryCurve) -> CurvePairKernels:
        reduced = fs.reduced
        n = curve.node_count
        diag = np.diag_indices(n)
        off = ~np.eye(n, dtype=bool)

        diff = curve.points[:, None, :] - curve.points[None, :, :]
        sigma = np.einsum("ijk,kl,ijl->ij", diff, reduced.a2_inv, diff)
        drift = np.exp(diff @ reduced.mu)
        f_val, f_sigma = log_split_profile(fs.kappa, sigma)
        a2_inv_diff = np.moveaxis(diff @ reduced.a2_inv, -1, 0)

        det_factor = reduced.det_factor
        phi1_single = det_factor * drift * f_val / (4.0 * np.pi)
        phi1_gradient = np.stack([
            det_factor * drift * (reduced.mu[b] * f_val / (4.0 * np.pi) + f_sigma * a2_inv_diff[b] / (2.0 * np.pi))
            for b in range(2)
        ])

        single = np.zeros((n, n), dtype=complex)
        gradient = np.zeros((2, n, n), dtype=complex)
        single[off] = self.evaluate_many(fs, diff[off])
        grad_off = self.gradient_many(fs, diff[off])
        gradient[0][off] = grad_off[:, 0]
        gradient[1][off] = grad_off[:, 1]

        t = curve.params
        log_matrix = np.zeros((n, n))
        log_matrix[off] = np.log(4.0 * np.sin((t[:, None] - t[None, :])[off] / 2.0) ** 2)

        q = np.einsum("ik,kl,il->i", curve.d1, reduced.a2_inv, curve.d1)
        # 对角线上 D = 0，phi1 由 F(0) = 1 与 E = 1 给出
        phi1_single[diag] = det_factor / (4.0 * np.pi)
        for b in range(2):
            phi1_gradient[b][diag] = det_factor * reduced.mu[b] / (4.0 * np.pi)

        return CurvePairKernels(
            fs=fs,
            curve=curve,
            log_matrix=log_matrix,
            single=single,
            gradient=gradient,
            phi1_single=phi1_single,
            phi1_gradient=phi1_gradient,
            diagonal_log=np.log(q),
            origin_constant=profile_origin_constant(fs.kappa),
            kress=kress_matrix(n),
        )

    # endregion
