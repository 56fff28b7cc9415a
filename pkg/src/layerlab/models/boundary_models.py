"""
边界曲线数据模型

定义解析参数化的闭曲线形状、在均匀参数节点上采样得到的边界曲线，
以及边界函数（节点上的复数值向量）的类型约定。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

# 边界函数：与曲线节点一一对应的复数向量
BoundaryFunction = np.ndarray

KITE_BEND = 0.65            # 风筝曲线 cos 2t 项系数
KITE_HEIGHT = 1.5           # 风筝曲线纵向半轴


class CurveKind(str, Enum):
    """预置曲线种类"""
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    KITE = "kite"


@dataclass(frozen=True)
class CurveShape:
    """
    解析曲线形状

    逆时针参数化 ψ(t), t ∈ [0, 2π)，提供 ψ、ψ'、ψ'' 的解析表达式。
    params: circle 为 (半径,)，ellipse 为 (a, b)，kite 无参数。
    """
    kind: CurveKind
    params: Tuple[float, ...] = ()

    def position(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind is CurveKind.CIRCLE:
            (radius,) = self.params
            return np.stack([radius * np.cos(t), radius * np.sin(t)], axis=-1)
        if self.kind is CurveKind.ELLIPSE:
            a, b = self.params
            return np.stack([a * np.cos(t), b * np.sin(t)], axis=-1)
        return np.stack([np.cos(t) + KITE_BEND * np.cos(2 * t) - KITE_BEND,
                         KITE_HEIGHT * np.sin(t)], axis=-1)

    def first_derivative(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind is CurveKind.CIRCLE:
            (radius,) = self.params
            return np.stack([-radius * np.sin(t), radius * np.cos(t)], axis=-1)
        if self.kind is CurveKind.ELLIPSE:
            a, b = self.params
            return np.stack([-a * np.sin(t), b * np.cos(t)], axis=-1)
        return np.stack([-np.sin(t) - 2 * KITE_BEND * np.sin(2 * t),
                         KITE_HEIGHT * np.cos(t)], axis=-1)

    def second_derivative(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind is CurveKind.CIRCLE:
            (radius,) = self.params
            return np.stack([-radius * np.cos(t), -radius * np.sin(t)], axis=-1)
        if self.kind is CurveKind.ELLIPSE:
            a, b = self.params
            return np.stack([-a * np.cos(t), -b * np.sin(t)], axis=-1)
        return np.stack([-np.cos(t) - 4 * KITE_BEND * np.cos(2 * t),
                         -KITE_HEIGHT * np.sin(t)], axis=-1)

    def label(self) -> str:
        if not self.params:
            return self.kind.value
        return f"{self.kind.value}({','.join(f'{p:g}' for p in self.params)})"


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """
    边界曲线模型

    在 t_i = 2πi/N 处采样的曲线及其导出量，全部由解析形状计算。
    法向 ν = (ψ'₂, -ψ'₁)/|ψ'| 为外法向，权重为 2π/N·|ψ'(t_i)|。
    二维数组的形状均为 (N, 2)。
    """
    shape: CurveShape
    node_count: int
    params: np.ndarray
    points: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    speeds: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for name in ("params", "points", "d1", "d2", "speeds", "tangents", "normals", "weights"):
            getattr(self, name).setflags(write=False)

    @property
    def step(self) -> float:
        """参数步长 2π/N"""
        return 2.0 * np.pi / self.node_count

    def label(self) -> str:
        return f"{self.shape.label()}[N={self.node_count}]"
