"""
微分算子数据模型

定义二阶常系数椭圆算子 P[a,D] 的系数三元组、约化形式以及基本解的数据契约。
所有数组字段在构造后设为只读，保证模型对象不可变。
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class OperatorCoefficients:
    """
    算子系数模型

    属性说明：
        a2: 实对称正定 2x2 主部系数矩阵 (a_lj)
        a1: 复数一阶系数向量 (a_l)
        a0: 复数零阶系数 a
        n: 空间维数，本库固定为 2
    """
    a2: np.ndarray
    a1: np.ndarray
    a0: complex
    n: int = 2

    def __post_init__(self):
        object.__setattr__(self, "a2", _frozen_array(self.a2, float))
        object.__setattr__(self, "a1", _frozen_array(self.a1, complex))
        object.__setattr__(self, "a0", complex(self.a0))

    @property
    def has_lower_order_terms(self) -> bool:
        """是否含有一阶或零阶项"""
        return bool(np.any(self.a1 != 0) or self.a0 != 0)

    def label(self) -> str:
        """紧凑的文本表示，用于报告和日志"""
        def fmt(z: complex) -> str:
            z = complex(z)
            if z.imag == 0:
                return f"{z.real:g}"
            return f"{z.real:g}{z.imag:+g}i"

        a2_text = ",".join(fmt(v) for v in self.a2.ravel())
        a1_text = ",".join(fmt(v) for v in self.a1)
        return f"(a2=[{a2_text}]; a1=[{a1_text}]; a0={fmt(self.a0)})"


@dataclass(frozen=True, eq=False)
class ReducedForm:
    """
    约化形式模型

    a2 = T·Tᵗ（T为下三角Cholesky因子），det_factor = 1/√det a2，
    mu = -(1/2) a2⁻¹ a1 为漂移指数，kappa = a - (1/4) a1ᵗ a2⁻¹ a1 为约化零阶常数。
    """
    T: np.ndarray
    T_inv: np.ndarray
    a2_inv: np.ndarray
    det_factor: float
    mu: np.ndarray
    kappa: complex

    def __post_init__(self):
        object.__setattr__(self, "T", _frozen_array(self.T, float))
        object.__setattr__(self, "T_inv", _frozen_array(self.T_inv, float))
        object.__setattr__(self, "a2_inv", _frozen_array(self.a2_inv, float))
        object.__setattr__(self, "mu", _frozen_array(self.mu, complex))
        object.__setattr__(self, "kappa", complex(self.kappa))


class ProfileTag(str, Enum):
    """径向剖面类型"""
    LOG = "log"                      # kappa = 0，对数剖面
    OSCILLATORY = "oscillatory"      # kappa > 0，使用 Y0
    DECAYING = "decaying"            # kappa < 0，使用 K0


@dataclass(frozen=True)
class RadialProfileKind:
    """径向剖面种类：tag 与波数 √|kappa|"""
    tag: ProfileTag
    wave_number: float = 0.0

    def __post_init__(self):
        if (self.wave_number == 0.0) != (self.tag is ProfileTag.LOG):
            raise ValueError(f"波数 {self.wave_number} 与剖面类型 {self.tag.value} 不一致")

    @property
    def kappa(self) -> float:
        """带符号的约化常数"""
        if self.tag is ProfileTag.DECAYING:
            return -self.wave_number ** 2
        return self.wave_number ** 2


@dataclass(frozen=True, eq=False)
class FundamentalSolution:
    """
    基本解模型

    S_a(x) = det_factor · e^{mu·x} · w_kappa(|T⁻¹x|)。
    求值、梯度和对数分解由 FundamentalSolutionService 提供。
    """
    coeffs: OperatorCoefficients
    reduced: ReducedForm
    profile: RadialProfileKind

    @property
    def kappa(self) -> float:
        return self.profile.kappa
