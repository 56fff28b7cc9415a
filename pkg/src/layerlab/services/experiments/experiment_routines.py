# -*- coding: utf-8 -*-
"""
实验例程模块

每个实验一个方法：按配置中的节点数逐个采样曲线，调用位势服务计算残差，
输出 (N, quantity, value, residual) 表格行。value 列记录被比较量的大小
（或均值、估计值），residual 列是判定所用的数。
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

import mpmath
import numpy as np

from ...models.boundary_models import BoundaryCurve, CurveKind
from ...models.common import InvalidConfigError, UnknownExperimentError
from ...models.experiment_models import (
    DensityKind, DensitySpec, ExperimentConfig, ExperimentName, ExperimentRow
)
from ...models.kernel_models import KernelClassParams, ModulusSpec
from ...models.operator_models import FundamentalSolution, OperatorCoefficients
from ...utils.logger import log_function_call
from ...utils.specfun_utils import cylinder, radial_profile
from ..numerics_service_base import NumericsServiceBase
from ..potential.potential_service import PotentialService

SPECFUN_GRID = np.geomspace(1e-6, 50.0, 128)
# 振荡函数在零点附近按包络 sqrt(2/(πx)) 的该比例取相对误差分母
OSCILLATION_START = 0.5
ZERO_FLOOR = 1e-3
SPECFUN_KINDS = ("J0", "Y0", "I0", "K0", "J1", "Y1", "I1", "K1")
MPMATH_DIGITS = 30
ODE_GRID = np.linspace(0.5, 5.0, 46)
ODE_STEP = 1e-4
ODE_TOLERANCE = 1e-6
WRONSKIAN_GRID = np.linspace(0.5, 20.0, 80)
WRONSKIAN_TOLERANCE = 1e-10
SINGULARITY_RADII = (1e-6, 1e-8)
SINGULARITY_TOLERANCE = 1e-4
WSTAR_OF_ONE_TOLERANCE = 1e-10
# 圆上 c_com 的舍入误差来自最小间距处 ν·(x'-x'') 的相消
CIRCLE_COM_TOLERANCE = 1e-10
DEFAULT_DOUBLE_LAYER_ALPHA = 0.5
DEFAULT_REGULARITY_ALPHA = 0.9
DEFAULT_CONSTANTS_ALPHA = 1.0


@dataclass
class QuantityTable:
    """
    一次实验产生的表格

    tolerances: 个别量的容差覆盖（未列出的量用实验默认容差）
    order_checked: 需要检查观测收敛阶的量
    """
    rows: List[ExperimentRow] = field(default_factory=list)
    tolerances: Dict[str, float] = field(default_factory=dict)
    order_checked: Set[str] = field(default_factory=set)

    def add(self, node_count: int, quantity: str, value: float, residual: float) -> None:
        self.rows.append(ExperimentRow(node_count, quantity, float(value), float(residual)))


def _is_laplace(coeffs: OperatorCoefficients) -> bool:
    return not coeffs.has_lower_order_terms and np.array_equal(coeffs.a2, np.eye(2))


class ExperimentRoutines(NumericsServiceBase):
    """
    实验例程集合

    通过 run(config) 按实验名称分派；未登记的名称抛出 UnknownExperimentError。
    """

    def __init__(self, potential_service: Optional[PotentialService] = None):
        super().__init__()
        self._potential = potential_service or PotentialService()
        self._handlers: Dict[ExperimentName, Callable[[ExperimentConfig], QuantityTable]] = {
            ExperimentName.JUMP_SINGLE: self.jump_single,
            ExperimentName.JUMP_DOUBLE: self.jump_double,
            ExperimentName.GAUSS_IDENTITY: self.gauss_identity,
            ExperimentName.GRADIENT_IDENTITY: self.gradient_identity,
            ExperimentName.FORMULA1: self.formula1,
            ExperimentName.WTG: self.wtg,
            ExperimentName.WSTAR_IDENTITY: self.wstar_identity,
            ExperimentName.KERNEL_NORM: self.kernel_norm,
            ExperimentName.REGULARITY: self.regularity,
            ExperimentName.CONSTANTS: self.constants,
            ExperimentName.SPECFUN_CHECK: self.specfun_check,
            ExperimentName.SINGLE_LAYER_CLOSED_FORM: self.single_layer_closed_form,
        }

    @property
    def potential(self) -> PotentialService:
        return self._potential

    def run(self, config: ExperimentConfig) -> QuantityTable:
        handler = self._handlers.get(config.experiment)
        if handler is None:
            raise UnknownExperimentError(f"未知的实验: {config.experiment!r}")
        return handler(config)

    # region 公共辅助

    def _fundamental(self, config: ExperimentConfig) -> FundamentalSolution:
        return self._potential.fundamental_solution(config.operator)

    def _curves(self, config: ExperimentConfig) -> Iterator[Tuple[int, BoundaryCurve]]:
        for node_count in config.node_counts:
            yield node_count, self._potential.curve(config.curve_kind, node_count, config.curve_params)

    def _density(self, config: ExperimentConfig, curve: BoundaryCurve) -> np.ndarray:
        return self._potential.geometry.density(curve, config.density)

    def _lower_order_tolerance(self, table: QuantityTable, config: ExperimentConfig, *quantities: str) -> None:
        """含低阶项的算子使用放宽的容差"""
        if config.operator.has_lower_order_terms:
            for quantity in quantities:
                table.tolerances[quantity] = self.settings.experiments.LOWER_ORDER_TOLERANCE

    # endregion

    # region 层位势

    @log_function_call
    def jump_double(self, config: ExperimentConfig) -> QuantityTable:
        fs = self._fundamental(config)
        table = QuantityTable()
        for n, curve in self._curves(config):
            report = self._potential.layers.double_layer_jump_residual(
                fs, config.operator, curve, self._density(config, curve), config.offsets, config.node_stride)
            table.add(n, "jump_double", report.extras["scale"], report.max_residual)
        return table

    @log_function_call
    def jump_single(self, config: ExperimentConfig) -> QuantityTable:
        fs = self._fundamental(config)
        table = QuantityTable()
        for n, curve in self._curves(config):
            report = self._potential.layers.single_layer_jump_residual(
                fs, config.operator, curve, self._density(config, curve), config.offsets, config.node_stride)
            table.add(n, "jump_single", report.extras["scale"], report.max_residual)
        return table

    @log_function_call
    def gauss_identity(self, config: ExperimentConfig) -> QuantityTable:
        if config.operator.has_lower_order_terms:
            raise InvalidConfigError({"operator": "Gauss 恒等式只适用于没有低阶项的算子"})
        fs = self._fundamental(config)
        table = QuantityTable()
        for n, curve in self._curves(config):
            report = self._potential.layers.gauss_identity_residual(fs, config.operator, curve)
            for side in ("interior", "boundary", "exterior"):
                table.add(n, side, report.extras[f"{side}_mean"], report.extras[side])
        return table

    @log_function_call
    def gradient_identity(self, config: ExperimentConfig) -> QuantityTable:
        fs = self._fundamental(config)
        table = QuantityTable()
        self._lower_order_tolerance(table, config, "interior", "exterior")
        for n, curve in self._curves(config):
            report = self._potential.layers.double_layer_gradient_identity_residual(
                fs, config.operator, curve, self._density(config, curve))
            for side in ("interior", "exterior"):
                table.add(n, side, report.extras[f"{side}_scale"], report.extras[side])
        return table

    @log_function_call
    def wstar_identity(self, config: ExperimentConfig) -> QuantityTable:
        fs = self._fundamental(config)
        layers = self._potential.layers
        table = QuantityTable()
        check_one = config.curve_kind is CurveKind.CIRCLE and _is_laplace(config.operator)
        if check_one:
            table.tolerances["wstar_of_one"] = WSTAR_OF_ONE_TOLERANCE
        for n, curve in self._curves(config):
            report = layers.w_star_identity_residual(fs, config.operator, curve, self._density(config, curve))
            table.add(n, "wstar_identity", report.extras["scale"], report.max_residual)
            if check_one:
                values = layers.w_star(fs, config.operator, curve, np.ones(n))
                table.add(n, "wstar_of_one", float(np.mean(values.real)), float(np.max(np.abs(values - 0.5))))
        return table

    @log_function_call
    def single_layer_closed_form(self, config: ExperimentConfig) -> QuantityTable:
        """圆 (半径 ρ) 上 μ≡1 的 Laplace 单层位势：边界与圆心处都等于 ρ ln ρ"""
        if config.curve_kind is not CurveKind.CIRCLE:
            raise InvalidConfigError({"curve.kind": "闭式单层位势只适用于圆"})
        if not _is_laplace(config.operator):
            raise InvalidConfigError({"operator": "闭式单层位势只适用于 Laplace 算子"})
        fs = self._fundamental(config)
        radius = config.curve_params[0]
        expected = radius * np.log(radius)
        table = QuantityTable()
        for n, curve in self._curves(config):
            ones = np.ones(n)
            boundary = self._potential.layers.single_layer(fs, curve, ones)
            center = self._potential.layers.single_layer(fs, curve, ones, np.zeros((1, 2)))
            table.add(n, "boundary", float(np.mean(boundary.real)), float(np.max(np.abs(boundary - expected))))
            table.add(n, "center", float(center[0].real), float(abs(center[0] - expected)))
        return table

    # endregion

    # region 交换子

    @log_function_call
    def formula1(self, config: ExperimentConfig) -> QuantityTable:
        fs = self._fundamental(config)
        l, j, r = config.indices
        table = QuantityTable(order_checked={"formula1"})
        self._lower_order_tolerance(table, config, "formula1")
        for n, curve in self._curves(config):
            g = curve.points[:, 0]
            report = self._potential.commutators.formula1_residual(
                fs, config.operator, curve, g, self._density(config, curve), l, j, r)
            table.add(n, "formula1", report.extras["scale"], report.max_residual)
        return table

    @log_function_call
    def wtg(self, config: ExperimentConfig) -> QuantityTable:
        fs = self._fundamental(config)
        l, j, _ = config.indices
        table = QuantityTable(order_checked={"wtg"})
        self._lower_order_tolerance(table, config, "wtg")
        for n, curve in self._curves(config):
            report = self._potential.commutators.wtg_residual(
                fs, config.operator, curve, self._density(config, curve), l, j)
            table.add(n, "wtg", report.extras["scale"], report.max_residual)
        return table

    # endregion

    # region 核类与正则性

    @log_function_call
    def kernel_norm(self, config: ExperimentConfig) -> QuantityTable:
        """各核的范数估计在抽样预算翻两番时的相对变化"""
        fs = self._fundamental(config)
        kernels = self._potential.kernels
        budget = config.sample_budget or self.settings.experiments.DEFAULT_SAMPLE_BUDGET
        alpha = config.modulus.exponent if config.modulus else DEFAULT_DOUBLE_LAYER_ALPHA
        table = QuantityTable()
        for n, curve in self._curves(config):
            samplers = (
                ("single_layer", kernels.single_layer_kernel(fs, curve), KernelClassParams(0.5, 1.0, 1.0)),
                ("single_layer_gamma1_1", kernels.single_layer_kernel(fs, curve), KernelClassParams(1.0, 1.0, 1.0)),
                ("gradient_1", kernels.gradient_kernel(fs, curve, 1), KernelClassParams(1.0, 2.0, 1.0)),
                ("gradient_2", kernels.gradient_kernel(fs, curve, 2), KernelClassParams(1.0, 2.0, 1.0)),
                ("double_layer", self._potential.layers.double_layer_kernel(fs, config.operator, curve),
                 KernelClassParams(1.0 - alpha, 2.0 - alpha, 1.0)),
            )
            for quantity, sampler, params in samplers:
                base = kernels.kernel_norm_estimate(sampler, curve, params, budget, config.seed)
                larger = kernels.kernel_norm_estimate(sampler, curve, params, 4 * budget, config.seed)
                change = abs(larger.norm - base.norm) / larger.norm if larger.norm > 0 else 0.0
                table.add(n, quantity, larger.norm, change)
        return table

    @log_function_call
    def regularity(self, config: ExperimentConfig) -> QuantityTable:
        """
        粗糙密度的双层位势迹在 r^α 下的 Hölder 商，以及 C¹ 密度的 M_12[w[μ]]
        在 ω_α 下的 Hölder 商；residual 为相对最粗网格的增长倍数
        """
        fs = self._fundamental(config)
        alpha = config.modulus.exponent if config.modulus else DEFAULT_REGULARITY_ALPHA
        metrics = self._potential.metrics
        table = QuantityTable()
        first: Dict[str, float] = {}
        for n, curve in self._curves(config):
            trace = self._potential.layers.double_layer(fs, config.operator, curve, self._density(config, curve))
            smooth = self._potential.geometry.density(curve, DensitySpec(DensityKind.C1_WAVE))
            tangential = self._potential.commutators.wtg_rhs(fs, config.operator, curve, smooth, 1, 2)
            quotients = {
                "sawtooth_trace": metrics.holder_quotient(curve, trace, ModulusSpec.power(alpha)),
                "c1_tangential": metrics.holder_quotient(curve, tangential, ModulusSpec.log_power(alpha)),
            }
            for quantity, value in quotients.items():
                first.setdefault(quantity, value)
                table.add(n, quantity, value, value / first[quantity] if first[quantity] > 0 else 0.0)
        return table

    @log_function_call
    def constants(self, config: ExperimentConfig) -> QuantityTable:
        """
        分部积分恒等式残差与边界几何常数

        圆且 α = 1 时 c_com 与闭式 1/(2ρ) 比较；其余情况检查预算翻两番时的单调性。
        """
        geometry = self._potential.geometry
        alpha = config.modulus.exponent if config.modulus else DEFAULT_CONSTANTS_ALPHA
        budget = config.sample_budget or self.settings.experiments.DEFAULT_SAMPLE_BUDGET
        closed_form = config.curve_kind is CurveKind.CIRCLE and alpha == 1.0
        table = QuantityTable()
        if closed_form:
            table.tolerances["c_com"] = CIRCLE_COM_TOLERANCE
        for n, curve in self._curves(config):
            t = curve.params
            phi = np.cos(t) + 0.5 * np.sin(2.0 * t)
            psi = np.sin(t) + np.cos(3.0 * t)
            pairing = geometry.quad(curve, geometry.tangential_M(curve, phi, 1, 2) * psi)
            table.add(n, "gagre", abs(pairing), geometry.gagre_residual(curve, phi, psi))

            base = geometry.boundary_constants(curve, alpha, budget, seed=config.seed)
            larger = geometry.boundary_constants(curve, alpha, 4 * budget, seed=config.seed)
            if closed_form:
                expected = 1.0 / (2.0 * config.curve_params[0])
                table.add(n, "c_com", larger.c_com, max(abs(base.c_com - expected), abs(larger.c_com - expected)))
            else:
                table.add(n, "c_com", larger.c_com, max(0.0, base.c_com - larger.c_com))
            for name in ("c1", "c2", "c3", "c4"):
                table.add(n, name, getattr(larger, name), max(0.0, getattr(base, name) - getattr(larger, name)))
        return table

    # endregion

    # region 柱函数

    @log_function_call
    def specfun_check(self, config: ExperimentConfig) -> QuantityTable:
        """
        柱函数对照 mpmath 扩展精度参考值的最大相对误差，
        径向剖面 ODE 残差、Wronski 关系与对数奇性的斜率
        """
        table = QuantityTable()
        node_count = config.node_counts[0]
        oracles = {
            "J0": lambda x: mpmath.besselj(0, x), "J1": lambda x: mpmath.besselj(1, x),
            "Y0": lambda x: mpmath.bessely(0, x), "Y1": lambda x: mpmath.bessely(1, x),
            "I0": lambda x: mpmath.besseli(0, x), "I1": lambda x: mpmath.besseli(1, x),
            "K0": lambda x: mpmath.besselk(0, x), "K1": lambda x: mpmath.besselk(1, x),
        }
        with mpmath.workdps(MPMATH_DIGITS):
            for kind in SPECFUN_KINDS:
                computed = cylinder(kind, SPECFUN_GRID)
                reference = np.array([float(oracles[kind](mpmath.mpf(float(x)))) for x in SPECFUN_GRID])
                scale = np.abs(reference)
                if kind[0] in "JY":
                    envelope = ZERO_FLOOR * np.sqrt(2.0 / (np.pi * SPECFUN_GRID))
                    scale = np.where(SPECFUN_GRID >= OSCILLATION_START, np.maximum(scale, envelope), scale)
                error = float(np.max(np.abs(computed - reference) / scale))
                table.add(node_count, kind, cylinder(kind, 1.0), error)

        for kappa in (0.0, 1.0, -1.0):
            quantity = f"ode_kappa_{kappa:g}"
            table.tolerances[quantity] = ODE_TOLERANCE
            w, _ = radial_profile(kappa, ODE_GRID)
            w_plus, _ = radial_profile(kappa, ODE_GRID + ODE_STEP)
            w_minus, _ = radial_profile(kappa, ODE_GRID - ODE_STEP)
            second = (w_plus - 2.0 * w + w_minus) / ODE_STEP ** 2
            first = (w_plus - w_minus) / (2.0 * ODE_STEP)
            residual = np.abs(second + first / ODE_GRID + kappa * w)
            table.add(node_count, quantity, float(np.max(np.abs(w))), float(residual.max()))

            quantity = f"singularity_kappa_{kappa:g}"
            table.tolerances[quantity] = SINGULARITY_TOLERANCE
            small, smaller = SINGULARITY_RADII
            slope = (radial_profile(kappa, small)[0] - radial_profile(kappa, smaller)[0]) / np.log(small / smaller)
            table.add(node_count, quantity, slope, abs(slope * 2.0 * np.pi - 1.0))

        table.tolerances["wronskian"] = WRONSKIAN_TOLERANCE
        x = WRONSKIAN_GRID
        wronskian = cylinder("J0", x) * cylinder("Y1", x) - cylinder("J1", x) * cylinder("Y0", x)
        table.add(node_count, "wronskian", float(np.max(np.abs(wronskian))),
                  float(np.max(np.abs(wronskian + 2.0 / (np.pi * x)))))
        return table

    # endregion
