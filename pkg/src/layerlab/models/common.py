"""
通用数据模型

定义项目中通用的异常类型和残差报告结构。
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np


class LayerLabError(ValueError):
    """layerlab 所有可预期错误的基类"""


class NotSymmetricError(LayerLabError):
    """主部系数矩阵不是实对称矩阵"""


class NotEllipticError(LayerLabError):
    """主部系数矩阵不是正定矩阵（Cholesky主元过小或分解失败）"""


class UnsupportedKappaError(LayerLabError):
    """约化零阶常数kappa带有非零虚部，无法构造径向剖面"""


class DomainError(LayerLabError):
    """自变量超出函数定义域（如 x <= 0 处求 Y0/K0）"""


class BadNodeCountError(LayerLabError):
    """边界节点数不是不小于8的偶数"""


class BadExponentError(LayerLabError):
    """Hölder指数或模指数不在 (0, 1] 内"""


class OutOfRangeError(LayerLabError):
    """核类参数不满足任何一种模转移情形"""


class PointOnCurveError(LayerLabError):
    """离边界求值的目标点落在边界曲线上"""


class ShapeMismatchError(LayerLabError):
    """边界函数长度与曲线节点数不一致"""


class UnknownExperimentError(LayerLabError):
    """实验名称不在实验目录中"""


class InvalidConfigError(LayerLabError):
    """
    实验配置无效

    field_errors 以字段路径为键（如 "curve.N"），值为该字段的诊断信息。
    """

    def __init__(self, field_errors: Dict[str, str]):
        self.field_errors = dict(field_errors)
        details = "; ".join(f"{path}: {msg}" for path, msg in sorted(self.field_errors.items()))
        super().__init__(f"实验配置无效 - {details}")


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """
    残差报告模型

    用于统一返回各类恒等式、跳跃关系的验证结果。
    max_residual 是所有节点/检验点上残差的最大值，node_residuals 保留逐点数据。
    """
    name: str
    max_residual: float
    node_residuals: Optional[np.ndarray] = None
    extras: Dict[str, float] = field(default_factory=dict)

    def passed(self, tolerance: float) -> bool:
        """残差是否在容差之内"""
        return bool(np.isfinite(self.max_residual)) and self.max_residual < tolerance
