#!/usr/bin/env python3
"""
layerlab 启动脚本
简化启动流程，自动处理路径问题

使用方法：
python run.py list
python run.py selftest --out results/selftest
python run.py run --config configs/gauss_identity_circle.json --out results
"""

import sys
import os

# 添加 src 目录与项目根目录到 Python 路径
current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(current_dir, 'src')
sys.path.insert(0, src_dir)
sys.path.insert(0, current_dir)

from layerlab.app import main

if __name__ == "__main__":
    sys.exit(main())
