"""
layerlab - 常系数二阶椭圆算子的层位势数值实验

在平面光滑闭曲线上构造 P[a,D] 的基本解、单层与双层位势及相关边界算子，
并通过可配置的数值实验验证跳跃关系、切向导数公式、核类范数与正则化性质。

采用分层架构设计：服务层、模型层、工具层，配置位于项目根目录的 config 包。

主要功能模块：
- 基本解与柱函数
- 边界几何与谱切向微积分
- 层位势、交换子算子与核类
- 实验运行与命令行

技术栈：Python 3.8+, numpy, scipy, mpmath
"""

__version__ = "1.0.0"
__author__ = "layerlab Team"
__description__ = "层位势数值实验工具"
