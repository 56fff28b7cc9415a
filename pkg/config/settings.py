"""
layerlab 基础配置文件

这个文件定义了layerlab的核心配置项，包括数值离散参数、实验判定容差、
日志系统参数等。所有配置都有合理的默认值，服务层通过 get_settings()
读取这些参数，而不是在代码中硬编码。

配置分类：
- 数值计算设置（离边界求值的分级面板、有限差分步长、Richardson偏移等）
- 实验设置（输出目录、各实验容差、收敛阶判定、抽样预算）
- 日志系统设置
"""

from pathlib import Path
from dataclasses import dataclass, field
from typing import Dict, Tuple


@dataclass
class NumericsSettings:
    """
    数值计算设置类

    控制离边界求值、有限差分和跳跃关系外推等数值过程的离散参数。
    """

    # 离边界求值：目标点距离 / 节点间距 达到该比例时直接用梯形公式，否则用分级面板
    NEAR_FIELD_RATIO: float = 5.0
    NEAR_PANEL_ORDER: int = 16                    # 分级面板上的 Gauss-Legendre 节点数
    NEAR_PANEL_SPACINGS: int = 8                  # 远端面板长度上限（以梯形节点间距计）
    TARGET_CHUNK: int = 256                       # 离边界求值时每批处理的目标点数
    CHUNK_ENTRIES: int = 2 ** 21                  # 每批 (目标点 x 源节点) 的最大元素数

    # 有限差分
    FD_STEP: float = 1e-5                         # 梯度恒等式左端的中心差分步长
    PDE_STEP: float = 1e-4                        # apply_pde 默认步长

    # 跳跃关系的法向偏移（严格递减），Richardson外推到 h -> 0
    RICHARDSON_OFFSETS: Tuple[float, ...] = (0.01, 0.005, 0.0025, 0.00125, 0.000625)

    # 曲线-基本解对的核分解缓存容量
    KERNEL_CACHE_SIZE: int = 8


@dataclass
class ExperimentSettings:
    """
    实验设置类

    定义实验输出位置和每个实验的默认判定容差。配置文件中的 tolerance
    字段会覆盖这里的默认值。
    """

    OUTPUT_DIR: str = "results"                   # 默认输出目录（相对项目根目录）
    SUMMARY_FILE_NAME: str = "summary.txt"        # 判定摘要文件名

    # 各实验默认容差
    TOLERANCES: Dict[str, float] = field(default_factory=lambda: {
        "jump_single": 1e-6,
        "jump_double": 1e-6,
        "gauss_identity": 1e-10,
        "gradient_identity": 1e-5,
        "formula1": 1e-6,
        "wtg": 1e-6,
        "wstar_identity": 1e-8,
        "kernel_norm": 0.1,                       # 预算翻两番时范数估计的相对变化
        "regularity": 2.0,                        # N 翻倍时Hölder商的增长倍数
        "constants": 1e-12,
        "specfun_check": 1e-10,
        "single_layer_closed_form": 1e-12,
    })
    LOWER_ORDER_TOLERANCE: float = 1e-4           # 含低阶项算子的梯度恒等式/交换子容差

    # 收敛阶判定：粗网格残差高于 ORDER_FLOOR 时才要求观测阶不低于 MIN_OBSERVED_ORDER
    ORDER_FLOOR: float = 1e-10
    MIN_OBSERVED_ORDER: float = 3.0

    DEFAULT_SAMPLE_BUDGET: int = 2 ** 20          # 核范数、边界常数的默认抽样预算
    SELFTEST_NODE_STRIDE: int = 1                # 自检中跳跃实验检查的节点步长（1 为全部节点）


@dataclass
class LoggingSettings:
    """
    日志系统配置类

    定义日志记录的级别与文件位置。控制台与文件的分级输出由
    layerlab.utils.logger.setup_logging 实现。
    """

    LOG_LEVEL: str = "INFO"                       # 默认日志级别
    CONSOLE_LOG_LEVEL: str = "INFO"               # 控制台日志级别
    FILE_LOG_LEVEL: str = "DEBUG"                 # 文件日志级别

    LOG_DIR: str = "logs"                         # 日志文件存放目录
    LOG_FILE_NAME: str = "layerlab.log"           # 主日志文件名
    ENABLE_FILE_LOGGING: bool = True              # 是否写日志文件

    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s"
    DATE_FORMAT: str = "%Y-%m-%d %H:%M:%S"


class Settings:
    """
    配置管理主类

    整合各个模块的配置类，提供统一的配置访问接口。

    使用方法：
        settings = Settings()
        offsets = settings.numerics.RICHARDSON_OFFSETS
        tolerance = settings.experiments.TOLERANCES["wtg"]
    """

    PROFILE_NAME = "default"

    def __init__(self):
        self.numerics = NumericsSettings()
        self.experiments = ExperimentSettings()
        self.logging = LoggingSettings()

        self.project_root = Path(__file__).parent.parent
        self._init_paths()

    def _init_paths(self):
        """把相对路径解析到项目根目录"""
        self.logging.LOG_DIR = str(self.project_root / self.logging.LOG_DIR)
        self.experiments.OUTPUT_DIR = str(self.project_root / self.experiments.OUTPUT_DIR)

    def tolerance_for(self, experiment: str) -> float:
        """
        获取实验的默认容差

        Args:
            experiment: 实验名称

        Returns:
            float: 默认容差，未登记的实验抛出 KeyError
        """
        return self.experiments.TOLERANCES[experiment]

    def validate_settings(self) -> bool:
        """
        验证配置项的有效性

        检查偏移列表严格递减且为正、面板参数与批大小为正、容差为正。

        Returns:
            bool: 配置是否有效
        """
        offsets = self.numerics.RICHARDSON_OFFSETS
        if len(offsets) < 2 or any(h <= 0 for h in offsets):
            return False
        if any(a <= b for a, b in zip(offsets, offsets[1:])):
            return False

        numerics = self.numerics
        if numerics.NEAR_FIELD_RATIO <= 0 or numerics.NEAR_PANEL_ORDER <= 0 or numerics.NEAR_PANEL_SPACINGS <= 0:
            return False
        if numerics.TARGET_CHUNK <= 0 or numerics.KERNEL_CACHE_SIZE <= 0:
            return False
        if numerics.FD_STEP <= 0 or numerics.PDE_STEP <= 0:
            return False

        if any(tol <= 0 for tol in self.experiments.TOLERANCES.values()):
            return False
        if self.experiments.DEFAULT_SAMPLE_BUDGET <= 0 or self.experiments.SELFTEST_NODE_STRIDE <= 0:
            return False

        return True


# 全局配置实例
_settings_instance = None


def get_settings() -> Settings:
    """
    获取全局配置实例（单例模式）

    第一次调用时创建默认配置；CLI 通过 use_settings 切换到开发/生产配置。

    Returns:
        Settings: 全局配置实例
    """
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings()
    return _settings_instance


def use_settings(settings: Settings) -> Settings:
    """替换全局配置实例，返回新实例"""
    global _settings_instance
    _settings_instance = settings
    return settings


__all__ = [
    'Settings',
    'NumericsSettings',
    'ExperimentSettings',
    'LoggingSettings',
    'get_settings',
    'use_settings'
]
