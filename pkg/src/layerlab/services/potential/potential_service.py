# -*- coding: utf-8 -*-
"""
位势服务门面模块

把算子约化、基本解、边界几何、层位势、交换子、核类与 Schauder 度量
七个专业服务组装在一起，实验层只需要持有这一个对象。
各专业服务通过构造参数注入，共享同一个基本解服务，因此核分解缓存对所有算子生效。
"""

from typing import Optional, Sequence

from ...models.boundary_models import BoundaryCurve
from ...models.operator_models import FundamentalSolution, OperatorCoefficients
from ..numerics_service_base import NumericsServiceBase
from .boundary_geometry_service import BoundaryGeometryService
from .commutator_service import CommutatorService
from .fundamental_solution_service import FundamentalSolutionService
from .kernel_class_service import KernelClassService
from .layer_potential_service import LayerPotentialService
from .operator_reduction_service import OperatorReductionService
from .schauder_metric_service import SchauderMetricService


class PotentialService(NumericsServiceBase):
    """
    位势服务门面

    主要功能：
    - 校验系数并构造基本解
    - 生成预置曲线
    - 以属性形式暴露各专业服务
    """

    def __init__(self):
        super().__init__()
        self._log_operation_start("PotentialService门面初始化")

        self._reduction = OperatorReductionService()
        self._fundamental = FundamentalSolutionService(reduction_service=self._reduction)
        self._geometry = BoundaryGeometryService()
        self._layers = LayerPotentialService(fundamental_service=self._fundamental,
                                             geometry_service=self._geometry)
        self._commutators = CommutatorService(layer_service=self._layers)
        self._kernels = KernelClassService(fundamental_service=self._fundamental)
        self._metrics = SchauderMetricService(geometry_service=self._geometry)

        self.logger.debug("位势服务门面初始化完成，所有专业服务已就绪")

    # region 专业服务

    @property
    def reduction(self) -> OperatorReductionService:
        return self._reduction

    @property
    def fundamental(self) -> FundamentalSolutionService:
        return self._fundamental

    @property
    def geometry(self) -> BoundaryGeometryService:
        return self._geometry

    @property
    def layers(self) -> LayerPotentialService:
        return self._layers

    @property
    def commutators(self) -> CommutatorService:
        return self._commutators

    @property
    def kernels(self) -> KernelClassService:
        return self._kernels

    @property
    def metrics(self) -> SchauderMetricService:
        return self._metrics

    # endregion

    # region 便捷入口

    def operator(self, a2, a1: Sequence = (0.0, 0.0), a0: complex = 0.0) -> OperatorCoefficients:
        """校验并返回算子系数"""
        return self._reduction.validate(a2, a1, a0)

    def fundamental_solution(self, coeffs: OperatorCoefficients) -> FundamentalSolution:
        return self._fundamental.build(coeffs)

    def curve(self, kind, node_count: int, params: Optional[Sequence[float]] = None) -> BoundaryCurve:
        return self._geometry.preset_curve(kind, node_count, params)

    # endregion
