"""
配置管理模块

提供layerlab的配置管理功能，支持默认、开发、生产三种配置档案。

配置文件：
- settings.py: 默认配置，包含数值、实验和日志的基础设置
- development.py: 开发环境配置，DEBUG日志与更小的预算
- production.py: 生产环境配置，安静的控制台输出
"""

from .settings import Settings, get_settings, use_settings
from .development import DevelopmentConfig
from .production import ProductionConfig

PROFILES = {
    'default': Settings,
    'development': DevelopmentConfig,
    'production': ProductionConfig,
}


def load_settings(profile: str = 'default') -> Settings:
    """
    按档案名创建配置并设为全局实例

    Args:
        profile: 'default' / 'development' / 'production'

    Returns:
        Settings: 新的全局配置实例

    Raises:
        KeyError: 未知的档案名
    """
    if profile not in PROFILES:
        raise KeyError(f"未知的配置档案: {profile}")
    return use_settings(PROFILES[profile]())


__all__ = [
    'Settings',
    'get_settings',
    'use_settings',
    'load_settings',
    'PROFILES',
    'DevelopmentConfig',
    'ProductionConfig'
]
