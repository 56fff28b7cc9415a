# -*- coding: utf-8 -*-
"""
位势计算服务模块导出

算子约化、基本解、边界几何、层位势、交换子、核类与 Schauder 度量
七个专业服务，以及组装它们的 PotentialService 门面。
"""

from .operator_reduction_service import OperatorReductionService
from .fundamental_solution_service import CurvePairKernels, FundamentalSolutionService
from .boundary_geometry_service import BoundaryGeometryService
from .layer_potential_service import LayerPotentialService
from .commutator_service import CommutatorService
from .kernel_class_service import KernelClassService
from .schauder_metric_service import SchauderMetricService

# 门面（主要对外接口）
from .potential_service import PotentialService

__all__ = [
    'OperatorReductionService',
    'CurvePairKernels',
    'FundamentalSolutionService',
    'BoundaryGeometryService',
    'LayerPotentialService',
    'CommutatorService',
    'KernelClassService',
    'SchauderMetricService',
    'PotentialService'
]
