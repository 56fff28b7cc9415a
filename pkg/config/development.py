"""
layerlab 开发环境配置文件

开发环境配置会覆盖基础配置中的相应项目：控制台显示DEBUG日志，
近场面板阶数和抽样预算调小，便于在开发机上快速迭代。
"""

from dataclasses import dataclass
from pathlib import Path

from .settings import Settings, NumericsSettings, ExperimentSettings, LoggingSettings


@dataclass
class DevelopmentNumericsSettings(NumericsSettings):
    """开发环境数值设置：低阶近场面板"""

    NEAR_PANEL_ORDER: int = 12                    # 开发时降低单次离边界求值的开销
    TARGET_CHUNK: int = 128


@dataclass
class DevelopmentExperimentSettings(ExperimentSettings):
    """开发环境实验设置：更小的抽样预算"""

    DEFAULT_SAMPLE_BUDGET: int = 2 ** 16
    OUTPUT_DIR: str = "results/dev"


@dataclass
class DevelopmentLoggingSettings(LoggingSettings):
    """开发环境日志设置：控制台也输出DEBUG"""

    LOG_LEVEL: str = "DEBUG"
    CONSOLE_LOG_LEVEL: str = "DEBUG"
    LOG_FILE_NAME: str = "layerlab_dev.log"


class DevelopmentConfig(Settings):
    """
    开发环境配置管理类

    使用方法：
        config = DevelopmentConfig()
    """

    PROFILE_NAME = "development"

    def __init__(self):
        self.numerics = DevelopmentNumericsSettings()
        self.experiments = DevelopmentExperimentSettings()
        self.logging = DevelopmentLoggingSettings()

        self.project_root = Path(__file__).parent.parent
        self._init_paths()
