"""
核类与Hölder模数据模型

定义 K_{γ1,γ2,γ3} 核类参数、核范数抽样估计、Hölder模规格、
对角处理规则以及边界几何常数记录。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .common import BadExponentError

# 核采样器：K(目标点数组 (..., 2), 源节点下标数组 (...)) -> 复数值数组 (...)
KernelSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]

# 双周期采样器：phi(t, s) -> 复数值数组
BiperiodicSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class KernelClassParams:
    """核类 K_{γ1,γ2,γ3} 的三个指数"""
    gamma1: float
    gamma2: float
    gamma3: float


@dataclass(frozen=True)
class KernelNormEstimate:
    """
    核范数抽样估计

    sup1: 节点对上 |x-y|^γ1 |K(x,y)| 的最大值
    sup2: 可容许三元组上 |x'-y|^γ2 / |x'-x''|^γ3 · |K(x',y)-K(x'',y)| 的最大值
    samples_used: 实际比较次数（节点对 + 三元组）
    """
    sup1: float
    sup2: float
    samples_used: int
    pairs_used: int = 0
    triples_used: int = 0

    @property
    def norm(self) -> float:
        return self.sup1 + self.sup2


class ModulusKind(str, Enum):
    """Hölder模种类"""
    POWER = "power"            # r^α
    LOG_POWER = "log_power"    # ω_θ(r) = r^θ|ln r|，在 r_θ = e^{-1/θ} 之后取常数


@dataclass(frozen=True)
class ModulusSpec:
    """Hölder模规格，指数必须位于 (0, 1]"""
    kind: ModulusKind
    exponent: float

    def __post_init__(self):
        if not (0.0 < self.exponent <= 1.0):
            raise BadExponentError(f"模指数必须位于 (0, 1]，实际为 {self.exponent}")

    @classmethod
    def power(cls, alpha: float) -> "ModulusSpec":
        return cls(ModulusKind.POWER, float(alpha))

    @classmethod
    def log_power(cls, theta: float) -> "ModulusSpec":
        return cls(ModulusKind.LOG_POWER, float(theta))

    def label(self) -> str:
        if self.kind is ModulusKind.POWER:
            return f"r^{self.exponent:g}"
        return f"omega_{self.exponent:g}"


class DiagonalRuleKind(str, Enum):
    EXCLUDE = "exclude"
    LOG_SPLIT = "log_split"


@dataclass(frozen=True)
class DiagonalRule:
    """
    边界积分的对角处理规则

    exclude: 丢弃梯形和中 i=j 项；log_split: 使用给定的 (phi1, phi2) 分解走 Kress 对数求积。
    """
    kind: DiagonalRuleKind
    phi1: Optional[BiperiodicSampler] = None
    phi2: Optional[BiperiodicSampler] = None

    @classmethod
    def exclude(cls) -> "DiagonalRule":
        return cls(DiagonalRuleKind.EXCLUDE)

    @classmethod
    def log_split(cls, phi1: BiperiodicSampler, phi2: BiperiodicSampler) -> "DiagonalRule":
        return cls(DiagonalRuleKind.LOG_SPLIT, phi1, phi2)


@dataclass(frozen=True)
class BoundaryConstants:
    """
    边界几何常数的抽样估计（均为真实上确界的下界）

    c_com: |ν(y)·(x-y)| / |x-y|^{1+α} 的上确界
    c1, c2, c3, c4: 依次为 c'_{Ω,γ}、c''_{Ω,γ}、c'''_{Ω,γ}、c^{iv}_Ω
    """
    c_com: float
    c1: float
    c2: float
    c3: float
    c4: float
    alpha: float
    gamma_weak: float
    gamma_strong: float
    samples_used: int


@dataclass(frozen=True)
class ModulusProperties:
    """
    Hölder模在对数网格上的性质检查

    monotone: 在网格上不减
    value_at_min: 网格最小点处的模值（趋于 0 的观测）
    sup_ratio: (0, 1) 内 r/ω(r) 的最大值
    """
    monotone: bool
    value_at_min: float
    sup_ratio: float


@dataclass(frozen=True)
class EmbeddingCheck:
    """嵌入不等式 q_β <= diam^{α-β}·q_α 在抽样节点对上的检查结果"""
    q_alpha: float
    q_beta: float
    diameter: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.q_beta <= self.bound * (1.0 + 1e-12) + 1e-300
