# -*- coding: utf-8 -*-
"""
服务层单元测试模块

位势服务测试模块：
- test_operator_reduction_service: 算子校验与约化
- test_fundamental_solution_service: 基本解与对数分裂
- test_boundary_geometry_service: 曲线、谱微分与边界常数
- test_layer_potential_service: 层位势与跳跃关系
- test_commutator_service: Q、R 算子与交换子公式
- test_kernel_class_service: 核类范数与模函数传递
- test_schauder_metric_service: Hölder 商与 Schauder 范数

实验服务测试模块：
- test_experiment_config_loader: 配置解析与逐字段校验
- test_experiment_runner_service: 判定规则与报告文件
"""
