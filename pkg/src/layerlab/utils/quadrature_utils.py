"""
求积工具

- Kress 对数权：∫₀^{2π} ln(4 sin²((t_i - s)/2)) f(s) ds ≈ Σ_j R_{|i-j|} f(t_j)
- Richardson 外推到 h -> 0 的 Lagrange 权
- 复合 Gauss-Legendre 面板规则，以及向某一参数点几何加密的周期面板规则
"""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
import scipy.linalg


@lru_cache(maxsize=16)
def _kress_weights_cached(node_count: int) -> Tuple[float, ...]:
    n = node_count // 2
    t = np.pi * np.arange(node_count) / n
    m = np.arange(1, n)
    weights = -(2.0 * np.pi / n) * (np.cos(np.outer(t, m)) / m).sum(axis=1)
    weights -= (np.pi / n ** 2) * np.cos(n * t)
    return tuple(weights)


def kress_weights(node_count: int) -> np.ndarray:
    """
    Kress 对数求积权向量 R_k, k = 0..N-1

    R(t) = -(2π/n) Σ_{m=1}^{n-1} cos(m t)/m - (π/n²) cos(n t),  t_k = πk/n,  N = 2n
    """
    if node_count % 2:
        raise ValueError(f"Kress 求积需要偶数节点数，实际为 {node_count}")
    return np.array(_kress_weights_cached(node_count))


def kress_matrix(node_count: int) -> np.ndarray:
    """循环矩阵 R_{ij} = R_{(i-j) mod N}"""
    return scipy.linalg.circulant(kress_weights(node_count))


def richardson_weights(offsets: Sequence[float]) -> np.ndarray:
    """
    在 h = 0 处求值的 Lagrange 插值权

    w_k = Π_{m≠k} h_m / (h_m - h_k)
    """
    h = np.asarray(offsets, dtype=float)
    weights = np.ones_like(h)
    for k in range(h.size):
        for m in range(h.size):
            if m != k:
                weights[k] *= h[m] / (h[m] - h[k])
    return weights


def richardson_extrapolate(offsets: Sequence[float], values: np.ndarray) -> np.ndarray:
    """
    把沿第0维排列的 f(h_k) 外推到 h = 0

    参数:
        offsets: 偏移列表 h_k
        values: 形状 (K, ...) 的数组

    返回:
        外推值，形状 (...)
    """
    weights = richardson_weights(offsets)
    return np.tensordot(weights, np.asarray(values), axes=(0, 0))


def panel_rule(breakpoints: Sequence[float], order: int) -> Tuple[np.ndarray, np.ndarray]:
    """相邻断点之间各放 order 个 Gauss-Legendre 节点，返回展平的 (节点, 权)"""
    breaks = np.asarray(breakpoints, dtype=float)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    left, right = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (right - left)
    return (half * nodes + 0.5 * (left + right)).ravel(), (half * weights).ravel()


@lru_cache(maxsize=64)
def _graded_rule_cached(levels: int, window: float, far_panels: int, order: int):
    side = np.concatenate([
        window * 2.0 ** np.arange(-levels, 1),
        np.linspace(window, np.pi, far_panels + 1)[1:],
    ])
    offsets, weights = panel_rule(np.concatenate([-side[::-1], side]), order)
    offsets.setflags(write=False)
    weights.setflags(write=False)
    return offsets, weights


def graded_panel_rule(levels: int, window: float, panel_length: float,
                      order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    周期函数在 [t0 - π, t0 + π] 上的分级面板规则（返回相对 t0 的偏移与权）

    [-window, window] 内的断点为 ±window·2^-k, k = 0..levels，最内层面板为
    [-window·2^-levels, window·2^-levels]；其余部分切成长度不超过 panel_length 的面板。
    复平面上距 t0 为 δ 的奇点只要 window·2^-levels ≤ δ/2，每个面板都看到
    相对距离不小于 2 的奇点，Gauss-Legendre 的误差按 (2+√5)^(-2·order) 衰减。
    """
    if levels < 0 or order < 1:
        raise ValueError(f"面板层数与阶数无效: levels={levels}, order={order}")
    window = min(float(window), 0.5 * np.pi)
    far_panels = max(1, int(np.ceil((np.pi - window) / panel_length)))
    return _graded_rule_cached(int(levels), window, far_panels, int(order))
