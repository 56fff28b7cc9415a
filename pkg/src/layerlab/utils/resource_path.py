"""
资源路径管理工具

提供layerlab的路径解析功能：日志目录与实验输出目录。
日志与输出目录的位置来自全局配置 (config.settings)。

使用示例：
    log_file = get_log_path("layerlab.log")
    out_dir = get_output_dir("results/run1")
"""

import os
import tempfile
from typing import Optional

from config.settings import get_settings


def get_logs_dir() -> str:
    """
    获取日志文件目录路径

    目录不存在时自动创建；无法创建时退回系统临时目录。

    返回值：
        str: 日志目录的绝对路径
    """
    log_dir = get_settings().logging.LOG_DIR
    try:
        os.makedirs(log_dir, exist_ok=True)
        return log_dir
    except OSError as e:
        print(f"获取日志目录失败: {e}")
        fallback_dir = os.path.join(tempfile.gettempdir(), 'layerlab', 'logs')
        os.makedirs(fallback_dir, exist_ok=True)
        return fallback_dir


def get_log_path(log_filename: str) -> str:
    """获取日志文件的绝对路径"""
    return os.path.join(get_logs_dir(), log_filename)


def get_output_dir(output: Optional[str] = None) -> str:
    """
    解析实验输出目录

    绝对路径原样使用，相对路径按当前工作目录解析；为空时使用配置中的默认目录。
    目录不存在时自动创建。

    参数:
        output: 配置文件或命令行给出的输出目录

    返回:
        str: 输出目录的绝对路径
    """
    target = output or get_settings().experiments.OUTPUT_DIR
    target = os.path.abspath(target)
    os.makedirs(target, exist_ok=True)
    return target
