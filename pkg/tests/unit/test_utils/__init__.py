"""
工具函数层单元测试

测试文件：
- test_specfun_utils.py: 柱函数与径向剖面
- test_spectral_quadrature_utils.py: FFT 谱微分、Kress 权与 Richardson 外推
- test_logger.py: 日志管理工具
"""
