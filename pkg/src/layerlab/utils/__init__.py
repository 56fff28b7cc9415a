"""
工具函数层 (Utils)

提供与具体算子无关的通用功能：

- logger: 分级日志系统
- resource_path: 日志与输出目录
- specfun_utils: 柱函数与二维径向剖面
- spectral_utils: 周期FFT微分与三角插值
- quadrature_utils: Kress对数求积权、Richardson外推、分级面板规则
"""

from .logger import setup_logging, get_logger, log_function_call, log_exception
from .resource_path import get_log_path, get_output_dir
from .specfun_utils import (
    cylinder, radial_profile, radial_profile_ratio, log_split_profile,
    profile_origin_constant, EULER_GAMMA
)
from .spectral_utils import (
    fourier_derivative, arc_length_derivative, trig_resample, trig_evaluate, significant_wave_numbers
)
from .quadrature_utils import (
    kress_weights, kress_matrix, richardson_weights, richardson_extrapolate, panel_rule, graded_panel_rule
)

__all__ = [
    'setup_logging', 'get_logger', 'log_function_call', 'log_exception',
    'get_log_path', 'get_output_dir',
    'cylinder', 'radial_profile', 'radial_profile_ratio', 'log_split_profile',
    'profile_origin_constant', 'EULER_GAMMA',
    'fourier_derivative', 'arc_length_derivative', 'trig_resample', 'trig_evaluate',
    'significant_wave_numbers',
    'kress_weights', 'kress_matrix', 'richardson_weights', 'richardson_extrapolate',
    'panel_rule', 'graded_panel_rule'
]
