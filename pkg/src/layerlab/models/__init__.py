"""
数据模型层 (Models)

定义layerlab中所有的数据结构和异常类型。
模型层作为服务层与实验层之间的数据契约，所有模型在构造后不可变。

主要模型类：
- OperatorCoefficients / ReducedForm / FundamentalSolution: 算子与基本解
- CurveShape / BoundaryCurve: 解析边界曲线及其采样
- KernelClassParams / KernelNormEstimate / ModulusSpec / BoundaryConstants: 核类与模
- ExperimentConfig / ExperimentRow / ExperimentResult: 实验配置与结果
- ResidualReport 以及 LayerLabError 异常体系
"""

from .common import (
    LayerLabError, NotSymmetricError, NotEllipticError, UnsupportedKappaError,
    DomainError, BadNodeCountError, BadExponentError, OutOfRangeError,
    PointOnCurveError, ShapeMismatchError, UnknownExperimentError,
    InvalidConfigError, ResidualReport
)
from .operator_models import (
    OperatorCoefficients, ReducedForm, ProfileTag, RadialProfileKind, FundamentalSolution
)
from .boundary_models import BoundaryFunction, CurveKind, CurveShape, BoundaryCurve
from .kernel_models import (
    KernelSampler, BiperiodicSampler, KernelClassParams, KernelNormEstimate,
    ModulusKind, ModulusSpec, DiagonalRuleKind, DiagonalRule, BoundaryConstants,
    ModulusProperties, EmbeddingCheck
)
from .experiment_models import (
    ExperimentName, DensityKind, DensitySpec, ExperimentConfig,
    ExperimentRow, QuantityVerdict, ExperimentResult
)

__all__ = [
    'LayerLabError', 'NotSymmetricError', 'NotEllipticError', 'UnsupportedKappaError',
    'DomainError', 'BadNodeCountError', 'BadExponentError', 'OutOfRangeError',
    'PointOnCurveError', 'ShapeMismatchError', 'UnknownExperimentError',
    'InvalidConfigError', 'ResidualReport',
    'OperatorCoefficients', 'ReducedForm', 'ProfileTag', 'RadialProfileKind', 'FundamentalSolution',
    'BoundaryFunction', 'CurveKind', 'CurveShape', 'BoundaryCurve',
    'KernelSampler', 'BiperiodicSampler', 'KernelClassParams', 'KernelNormEstimate',
    'ModulusKind', 'ModulusSpec', 'DiagonalRuleKind', 'DiagonalRule', 'BoundaryConstants',
    'ModulusProperties', 'EmbeddingCheck',
    'ExperimentName', 'DensityKind', 'DensitySpec', 'ExperimentConfig',
    'ExperimentRow', 'QuantityVerdict', 'ExperimentResult'
]
