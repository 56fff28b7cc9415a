"""
实验数据模型

定义实验配置、密度预设、结果表格行以及每个量的判定结果。
实验配置由 ExperimentConfigLoader 从JSON文件构造并完成字段校验。
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .boundary_models import CurveKind
from .kernel_models import ModulusSpec
from .operator_models import OperatorCoefficients


class ExperimentName(str, Enum):
    """实验目录中的全部实验"""
    JUMP_SINGLE = "jump_single"
    JUMP_DOUBLE = "jump_double"
    GAUSS_IDENTITY = "gauss_identity"
    GRADIENT_IDENTITY = "gradient_identity"
    FORMULA1 = "formula1"
    WTG = "wtg"
    WSTAR_IDENTITY = "wstar_identity"
    KERNEL_NORM = "kernel_norm"
    REGULARITY = "regularity"
    CONSTANTS = "constants"
    SPECFUN_CHECK = "specfun_check"
    SINGLE_LAYER_CLOSED_FORM = "single_layer_closed_form"


class DensityKind(str, Enum):
    """密度预设"""
    CONSTANT = "constant"
    COS = "cos"
    SIN = "sin"
    ROUGH_SAWTOOTH = "rough_sawtooth"     # k 齿三角波，连续但不可微
    C1_WAVE = "c1_wave"                   # sin t·|sin t|，C¹ 但不是 C²


@dataclass(frozen=True)
class DensitySpec:
    kind: DensityKind = DensityKind.COS
    teeth: int = 8

    def label(self) -> str:
        if self.kind is DensityKind.ROUGH_SAWTOOTH:
            return f"{self.kind.value}({self.teeth})"
        return self.kind.value


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """
    实验配置模型

    属性说明：
        experiment: 实验名称
        operator: 已校验的算子系数
        curve_kind / curve_params: 预置曲线
        node_counts: 严格递增的偶数节点数列表
        density: 密度预设
        indices: 切向导数下标 (l, j, r)，从1开始
        modulus: Hölder模，仅 regularity 等实验使用
        seed: 抽样随机种子
        output: 输出目录
        tolerance: 覆盖默认容差（可选）
        offsets: 跳跃关系的法向偏移列表（可选）
        node_stride: 跳跃实验的节点步长
        sample_budget: 核范数/边界常数的抽样预算（可选）
        name: 自检目录中的配置名，决定输出子目录
    """
    experiment: ExperimentName
    operator: OperatorCoefficients
    curve_kind: CurveKind
    curve_params: Tuple[float, ...]
    node_counts: Tuple[int, ...]
    density: DensitySpec = field(default_factory=DensitySpec)
    indices: Tuple[int, int, int] = (1, 2, 1)
    modulus: Optional[ModulusSpec] = None
    seed: int = 0
    output: str = "results"
    tolerance: Optional[float] = None
    offsets: Optional[Tuple[float, ...]] = None
    node_stride: int = 1
    sample_budget: Optional[int] = None
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or self.experiment.value


@dataclass(frozen=True)
class ExperimentRow:
    """CSV表格的一行：(N, quantity, value, residual, observed_order)"""
    node_count: int
    quantity: str
    value: float
    residual: float
    observed_order: Optional[float] = None


@dataclass(frozen=True)
class QuantityVerdict:
    """单个量在全部 N 上的判定结果"""
    quantity: str
    passed: bool
    worst_residual: float
    tolerance: float
    detail: str = ""


@dataclass
class ExperimentResult:
    """一次实验运行的结果：表格行与逐量判定"""
    config: ExperimentConfig
    rows: List[ExperimentRow] = field(default_factory=list)
    verdicts: List[QuantityVerdict] = field(default_factory=list)
    csv_path: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and all(v.passed for v in self.verdicts)
