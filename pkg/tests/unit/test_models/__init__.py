"""
数据模型层单元测试

验证模型的不可变性、取值校验与标签格式。
"""
