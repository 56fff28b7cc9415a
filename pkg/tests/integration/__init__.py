"""
集成测试模块

通过 main(argv) 运行子命令，检查退出码、CSV 与 summary.txt。
"""
