"""
柱函数与二维径向剖面工具

自包含地计算 J0, J1, Y0, Y1, I0, I1, K0, K1（numpy向量化），
并由它们构造二维基本解的径向剖面 w_kappa 及其对数分解：

    (Δ + kappa) w = δ
    kappa = 0:   w = ln(r) / 2π
    kappa > 0:   w = Y0(kr) / 4
    kappa < 0:   w = -K0(kr) / 2π

数值方案：
- J/Y: x <= 8 升幂级数；8 < x <= 25 Miller 向后递推（Neumann级数给出Y）；x > 25 Hankel渐近展开
- I:   x <= 25 升幂级数；x > 25 渐近展开
- K:   x <= 2 升幂级数；x > 2 对 ∫ e^{-x cosh t} cosh(νt) dt 做指数收敛的梯形积分
"""

import math
from typing import Tuple, Union

import numpy as np

from ..models.common import DomainError

EULER_GAMMA = 0.57721566490153286061
SERIES_CROSSOVER = 8.0
MILLER_CROSSOVER = 25.0
K_SERIES_CROSSOVER = 2.0

SERIES_TERMS = 40
I_SERIES_TERMS = 80
ASYMPTOTIC_TERMS = 30
K_QUAD_STEP = 0.1
K_QUAD_NODES = 48
MILLER_SEED = 1e-30
MILLER_RESCALE = 1e250

CYLINDER_KINDS = ("J0", "J1", "Y0", "Y1", "I0", "I1", "K0", "K1")

ArrayLike = Union[float, np.ndarray]


# region 升幂级数

def _series_j(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    q = -(x * x) / 4.0
    term0 = np.ones_like(x)
    term1 = np.ones_like(x)
    j0 = term0.copy()
    s1 = term1.copy()
    for k in range(1, SERIES_TERMS):
        term0 = term0 * q / (k * k)
        term1 = term1 * q / (k * (k + 1))
        j0 += term0
        s1 += term1
    return j0, 0.5 * x * s1


def _series_y(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    j0, j1 = _series_j(x)
    log_term = np.log(x / 2.0) + EULER_GAMMA
    q = -(x * x) / 4.0

    term0 = np.ones_like(x)
    term1 = np.ones_like(x)
    s0 = np.zeros_like(x)
    # k = 0 项：ψ(1) + ψ(2) = 1 - 2γ
    s1 = (1.0 - 2.0 * EULER_GAMMA) * term1
    h_k = 0.0
    for k in range(1, SERIES_TERMS):
        term0 = term0 * q / (k * k)
        term1 = term1 * q / (k * (k + 1))
        h_k += 1.0 / k
        s0 -= h_k * term0
        s1 += (2.0 * h_k + 1.0 / (k + 1) - 2.0 * EULER_GAMMA) * term1

    y0 = (2.0 / np.pi) * (log_term * j0 + s0)
    y1 = (-2.0 / (np.pi * x) + (2.0 / np.pi) * np.log(x / 2.0) * j1
          - (x / (2.0 * np.pi)) * s1)
    return y0, y1


def _series_i(x: np.ndarray, terms: int = I_SERIES_TERMS) -> Tuple[np.ndarray, np.ndarray]:
    q = (x * x) / 4.0
    term0 = np.ones_like(x)
    term1 = np.ones_like(x)
    i0 = term0.copy()
    s1 = term1.copy()
    for k in range(1, terms):
        term0 = term0 * q / (k * k)
        term1 = term1 * q / (k * (k + 1))
        i0 += term0
        s1 += term1
    return i0, 0.5 * x * s1


def _series_k(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    i0, i1 = _series_i(x, SERIES_TERMS)
    log_half = np.log(x / 2.0)
    q = (x * x) / 4.0

    term0 = np.ones_like(x)
    term1 = np.ones_like(x)
    s0 = np.zeros_like(x)
    s1 = (1.0 - 2.0 * EULER_GAMMA) * term1
    h_k = 0.0
    for k in range(1, SERIES_TERMS):
        term0 = term0 * q / (k * k)
        term1 = term1 * q / (k * (k + 1))
        h_k += 1.0 / k
        s0 += h_k * term0
        s1 += (2.0 * h_k + 1.0 / (k + 1) - 2.0 * EULER_GAMMA) * term1

    k0 = -(log_half + EULER_GAMMA) * i0 + s0
    k1 = 1.0 / x + log_half * i1 - (x / 4.0) * s1
    return k0, k1

# endregion


# region 中等宗量：Miller 向后递推

def _miller_jy(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    对 8 < x <= 25 用向后递推 J_{n-1} = (2n/x) J_n - J_{n+1}，
    以 J0 + 2ΣJ_2k = 1 归一，同时累积 Y0、Y1 的 Neumann 级数。
    """
    x_max = float(np.max(x))
    top = 2 * int((x_max + 20.0 + math.sqrt(40.0 * x_max)) / 2.0)

    j_next = np.zeros_like(x)
    j_curr = np.full_like(x, MILLER_SEED)
    norm = np.zeros_like(x)
    y0_sum = np.zeros_like(x)       # Σ_{k>=1} (-1)^k J_2k / k
    y1_sum = np.zeros_like(x)       # Σ c_n J_n (n 为奇数)
    j1 = np.zeros_like(x)

    for n in range(top, 0, -1):
        # j_curr 此时是 J_n
        if n % 2 == 0:
            k = n // 2
            norm += 2.0 * j_curr
            y0_sum += ((-1) ** k) * j_curr / k
        else:
            m = (n - 1) // 2
            if m == 0:
                y1_sum += -j_curr
                j1 = j_curr.copy()
            else:
                y1_sum += ((-1) ** (m + 1)) * (1.0 / (m + 1) + 1.0 / m) * j_curr
        j_prev = (2.0 * n / x) * j_curr - j_next
        j_next, j_curr = j_curr, j_prev

        big = np.abs(j_curr) > MILLER_RESCALE
        if np.any(big):
            scale = np.where(big, 1.0 / MILLER_RESCALE, 1.0)
            j_curr = j_curr * scale
            j_next = j_next * scale
            norm = norm * scale
            y0_sum = y0_sum * scale
            y1_sum = y1_sum * scale
            j1 = j1 * scale

    norm += j_curr
    j0 = j_curr / norm
    j1 = j1 / norm
    y0_sum = y0_sum / norm
    y1_sum = y1_sum / norm

    log_term = np.log(x / 2.0) + EULER_GAMMA
    y0 = (2.0 / np.pi) * (log_term * j0 - 2.0 * y0_sum)
    y1 = (2.0 / np.pi) * (log_term * j1 - j0 / x + y1_sum)
    return j0, j1, y0, y1

# endregion


# region 大宗量：渐近展开

def _hankel_pq(nu: int, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    mu = 4.0 * nu * nu
    term = np.ones_like(x)
    p = term.copy()
    q = np.zeros_like(x)
    for k in range(1, ASYMPTOTIC_TERMS):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * term
        else:
            q += sign * term
    return p, q


def _asymptotic_jy(nu: int, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    p, q = _hankel_pq(nu, x)
    chi = x - (nu / 2.0 + 0.25) * np.pi
    amp = np.sqrt(2.0 / (np.pi * x))
    return amp * (p * np.cos(chi) - q * np.sin(chi)), amp * (p * np.sin(chi) + q * np.cos(chi))


def _asymptotic_i(nu: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * nu * nu
    term = np.ones_like(x)
    total = term.copy()
    for k in range(1, ASYMPTOTIC_TERMS):
        term = -term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        total += term
    return np.exp(x) / np.sqrt(2.0 * np.pi * x) * total


def _quadrature_k(nu: int, x: np.ndarray) -> np.ndarray:
    t = K_QUAD_STEP * np.arange(K_QUAD_NODES + 1)
    weights = np.full(t.shape, K_QUAD_STEP)
    weights[0] *= 0.5
    integrand = np.exp(-np.multiply.outer(x, np.cosh(t) - 1.0)) * np.cosh(nu * t)
    return np.exp(-x) * (integrand @ weights)

# endregion


def _evaluate_kind(kind: str, x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)

    if kind[0] in "JY":
        order = int(kind[1])
        small = x <= SERIES_CROSSOVER
        middle = (x > SERIES_CROSSOVER) & (x <= MILLER_CROSSOVER)
        large = x > MILLER_CROSSOVER
        if np.any(small):
            xs = x[small]
            if kind[0] == "J":
                out[small] = _series_j(xs)[order]
            else:
                out[small] = _series_y(xs)[order]
        if np.any(middle):
            j0, j1, y0, y1 = _miller_jy(x[middle])
            out[middle] = {"J0": j0, "J1": j1, "Y0": y0, "Y1": y1}[kind]
        if np.any(large):
            j_val, y_val = _asymptotic_jy(order, x[large])
            out[large] = j_val if kind[0] == "J" else y_val
        return out

    if kind[0] == "I":
        order = int(kind[1])
        small = x <= MILLER_CROSSOVER
        if np.any(small):
            out[small] = _series_i(x[small])[order]
        if np.any(~small):
            out[~small] = _asymptotic_i(order, x[~small])
        return out

    order = int(kind[1])
    small = x <= K_SERIES_CROSSOVER
    if np.any(small):
        out[small] = _series_k(x[small])[order]
    if np.any(~small):
        out[~small] = _quadrature_k(order, x[~small])
    return out


def cylinder(kind: str, x: ArrayLike) -> ArrayLike:
    """
    计算柱函数

    参数:
        kind: "J0" / "J1" / "Y0" / "Y1" / "I0" / "I1" / "K0" / "K1"
        x: 标量或数组；Y、K 要求 x > 0，J、I 要求 x >= 0

    返回:
        与输入形状相同的实数值（标量输入返回 float）

    异常:
        DomainError: 自变量超出定义域
        ValueError: 未知的函数种类
    """
    if kind not in CYLINDER_KINDS:
        raise ValueError(f"未知的柱函数种类: {kind}")

    values = np.asarray(x, dtype=float)
    if values.size and np.any(values < 0.0):
        raise DomainError(f"{kind} 的自变量必须非负，最小值为 {values.min()}")
    if kind[0] in "YK" and values.size and np.any(values <= 0.0):
        raise DomainError(f"{kind} 的自变量必须为正数，最小值为 {values.min()}")

    flat = values.ravel()
    result = _evaluate_kind(kind, flat).reshape(values.shape)
    if np.ndim(x) == 0:
        return float(result)
    return result


def _wave_number(kappa: float) -> float:
    return math.sqrt(abs(float(kappa)))


def radial_profile(kappa: float, r: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    径向剖面及其导数

    参数:
        kappa: 实数约化常数
        r: 正的半径（标量或数组）

    返回:
        (w, dw/dr)

    异常:
        DomainError: r <= 0
    """
    r_arr = np.asarray(r, dtype=float)
    if r_arr.size and np.any(r_arr <= 0.0):
        raise DomainError(f"径向剖面要求 r > 0，最小值为 {r_arr.min()}")

    if kappa == 0:
        w = np.log(r_arr) / (2.0 * np.pi)
        dw = 1.0 / (2.0 * np.pi * r_arr)
    elif kappa > 0:
        k = _wave_number(kappa)
        w = cylinder("Y0", k * r_arr) / 4.0
        dw = -k * cylinder("Y1", k * r_arr) / 4.0
    else:
        k = _wave_number(kappa)
        w = -cylinder("K0", k * r_arr) / (2.0 * np.pi)
        dw = k * cylinder("K1", k * r_arr) / (2.0 * np.pi)

    if np.ndim(r) == 0:
        return float(w), float(dw)
    return np.asarray(w), np.asarray(dw)


def radial_profile_ratio(kappa: float, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """向量化辅助：返回 (w(r), w'(r)/r)，用于梯度核的组装"""
    r_arr = np.asarray(r, dtype=float)
    w, dw = radial_profile(kappa, r_arr)
    return np.asarray(w, dtype=float), np.asarray(dw, dtype=float) / r_arr


def log_split_profile(kappa: float, sigma: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    对数分解 w(ρ) = (1/4π)·F(σ)·ln σ + G(σ), σ = ρ² 中的 F 及 dF/dσ

    kappa = 0: F ≡ 1；kappa > 0: F = J0(k√σ)；kappa < 0: F = I0(k√σ)。
    σ = 0 处取连续极限 F(0) = 1, dF/dσ(0) = ∓k²/4。
    """
    s = np.asarray(sigma, dtype=float)
    if kappa == 0:
        f_val = np.ones_like(s)
        f_sigma = np.zeros_like(s)
    else:
        k = _wave_number(kappa)
        z = k * np.sqrt(s)
        positive = z > 0.0
        safe_z = np.where(positive, z, 1.0)
        if kappa > 0:
            f_val = cylinder("J0", z)
            ratio = np.where(positive, 2.0 * cylinder("J1", safe_z) / safe_z, 1.0)
            f_sigma = -(k * k / 4.0) * ratio
        else:
            f_val = cylinder("I0", z)
            ratio = np.where(positive, 2.0 * cylinder("I1", safe_z) / safe_z, 1.0)
            f_sigma = (k * k / 4.0) * ratio

    if np.ndim(sigma) == 0:
        return float(f_val), float(f_sigma)
    return np.asarray(f_val), np.asarray(f_sigma)


def profile_origin_constant(kappa: float) -> float:
    """对数分解中光滑部分在原点的值 G(0)"""
    if kappa == 0:
        return 0.0
    return (math.log(_wave_number(kappa) / 2.0) + EULER_GAMMA) / (2.0 * np.pi)
