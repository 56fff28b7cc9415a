# -*- coding: utf-8 -*-
"""
业务服务层 (Services)

封装layerlab的全部数值计算与实验流程。

主要服务类：
- PotentialService: 位势计算门面，组装约化、基本解、几何、层位势、交换子、核类与度量服务
- ExperimentRunnerService: 实验运行服务，按配置执行实验并写出CSV与摘要
- ExperimentConfigLoader: 实验配置加载与字段校验

设计原则：
- 服务之间通过构造参数注入依赖
- 所有服务继承 NumericsServiceBase，日志与错误格式统一
- 库内错误一律抛出 LayerLabError 的子类
"""

from .numerics_service_base import NumericsServiceBase
from .potential import PotentialService
from .experiments import ExperimentConfigLoader, ExperimentRunnerService

__all__ = [
    'NumericsServiceBase',
    'PotentialService',
    'ExperimentConfigLoader',
    'ExperimentRunnerService'
]
