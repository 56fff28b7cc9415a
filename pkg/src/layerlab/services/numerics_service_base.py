# -*- coding: utf-8 -*-
"""
数值服务基类模块

所有数值服务的公共基类。为服务提供统一的日志记录器、操作日志格式、
全局配置访问以及边界函数长度校验，保证各服务的错误处理与日志输出一致。
"""

import logging

import numpy as np

from config.settings import get_settings

from ..models.boundary_models import BoundaryCurve
from ..models.common import ShapeMismatchError


class NumericsServiceBase:
    """
    数值服务基类

    主要功能：
    - 为每个继承的服务创建专用日志记录器
    - 提供统一的操作开始/成功/失败日志
    - 校验边界函数与曲线节点数一致
    """

    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__module__)
        self._service_name = self.__class__.__name__

    @property
    def settings(self):
        """全局配置（随 --profile 切换）"""
        return get_settings()

    def _log_operation_start(self, operation_name: str, **kwargs) -> None:
        """
        记录操作开始的标准日志

        Args:
            operation_name: 操作名称描述
            **kwargs: 操作相关的参数信息
        """
        params_str = ', '.join([f"{k}={v}" for k, v in kwargs.items()]) if kwargs else "无参数"
        self.logger.debug(f"[{self._service_name}] 开始执行操作: {operation_name} ({params_str})")

    def _log_operation_success(self, operation_name: str, result_summary: str = "") -> None:
        """
        记录操作成功的标准日志

        Args:
            operation_name: 操作名称描述
            result_summary: 操作结果的简要描述
        """
        summary_text = f" - {result_summary}" if result_summary else ""
        self.logger.debug(f"[{self._service_name}] 操作成功完成: {operation_name}{summary_text}")

    def _log_operation_error(self, operation_name: str, error: Exception) -> None:
        """
        记录操作失败的标准日志

        Args:
            operation_name: 操作名称描述
            error: 异常对象
        """
        self.logger.error(f"[{self._service_name}] 操作执行失败: {operation_name} - {str(error)}")

    def _check_boundary_function(self, curve: BoundaryCurve, values, name: str = "mu") -> np.ndarray:
        """
        把边界函数转换为复数数组并检查长度

        Raises:
            ShapeMismatchError: 长度与曲线节点数不一致
        """
        array = np.asarray(values, dtype=complex)
        if array.shape != (curve.node_count,):
            raise ShapeMismatchError(
                f"边界函数 {name} 的形状 {array.shape} 与曲线节点数 {curve.node_count} 不一致")
        return array
