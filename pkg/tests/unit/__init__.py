"""
单元测试模块

每个测试文件对应一个源代码模块。

测试模块：
- test_models/: 数据模型层测试
- test_services/: 位势服务与实验服务测试
- test_utils/: 柱函数、谱方法与求积工具测试
"""
