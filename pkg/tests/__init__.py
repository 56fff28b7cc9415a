"""
测试模块

layerlab 的完整测试套件，由 pytest 运行 unittest 风格的测试类。

测试结构：
- unit/: 单元测试，测试各个模块的独立功能
- integration/: 集成测试，通过命令行入口端到端运行实验
- test_config.py: 配置系统测试脚本

测试原则：
- 数值比较使用 numpy.testing，柱函数以 mpmath 扩展精度为参照
- 文件输出写入临时目录，不污染项目目录
"""
