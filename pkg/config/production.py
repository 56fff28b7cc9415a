"""
layerlab 生产环境配置文件

用于正式的收敛研究与自检运行：控制台只显示WARNING及以上，
日志文件照常记录完整的DEBUG信息，数值参数保持默认。
"""

from dataclasses import dataclass
from pathlib import Path

from .settings import Settings, NumericsSettings, ExperimentSettings, LoggingSettings


@dataclass
class ProductionLoggingSettings(LoggingSettings):
    """生产环境日志设置：安静的控制台"""

    LOG_LEVEL: str = "WARNING"
    CONSOLE_LOG_LEVEL: str = "WARNING"


class ProductionConfig(Settings):
    """
    生产环境配置管理类

    使用方法：
        config = ProductionConfig()
    """

    PROFILE_NAME = "production"

    def __init__(self):
        self.numerics = NumericsSettings()
        self.experiments = ExperimentSettings()
        self.logging = ProductionLoggingSettings()

        self.project_root = Path(__file__).parent.parent
        self._init_paths()
        self._init_production_paths()

    def _init_production_paths(self):
        """确保输出目录与日志目录存在"""
        Path(self.logging.LOG_DIR).mkdir(parents=True, exist_ok=True)
        Path(self.experiments.OUTPUT_DIR).mkdir(parents=True, exist_ok=True)
