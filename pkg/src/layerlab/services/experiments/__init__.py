"""
实验服务包

配置加载、实验例程、报告写出与运行服务。
"""

from .experiment_catalog import EXPERIMENT_DESCRIPTIONS, selftest_configs
from .experiment_config_loader import ExperimentConfigLoader
from .experiment_report_writer import ExperimentReportWriter
from .experiment_routines import ExperimentRoutines, QuantityTable
from .experiment_runner_service import ExperimentRunnerService, observed_order, with_observed_orders

__all__ = [
    'EXPERIMENT_DESCRIPTIONS',
    'selftest_configs',
    'ExperimentConfigLoader',
    'ExperimentReportWriter',
    'ExperimentRoutines',
    'QuantityTable',
    'ExperimentRunnerService',
    'observed_order',
    'with_observed_orders',
]
