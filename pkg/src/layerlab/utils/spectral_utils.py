"""
周期谱方法工具

在均匀参数网格 t_i = 2πi/N 上做 FFT 微分和三角插值重采样。
偶数 N 的 Nyquist 模态在求导时置零，在重采样时对半分到正负频率。
"""

import numpy as np


def _restore_dtype(result: np.ndarray, source: np.ndarray) -> np.ndarray:
    if np.isrealobj(source):
        return result.real.copy()
    return result


def fourier_derivative(values: np.ndarray, order: int = 1) -> np.ndarray:
    """
    对周期采样做参数 t 的谱导数

    参数:
        values: 长度为 N 的采样（实数或复数），最后一维为参数方向
        order: 导数阶数

    返回:
        d^order f / dt^order，数据类型与输入一致
    """
    values = np.asarray(values)
    n = values.shape[-1]
    coefficients = np.fft.fft(values, axis=-1)
    wave_numbers = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        wave_numbers[n // 2] = 0.0
    derivative = np.fft.ifft((1j * wave_numbers) ** order * coefficients, axis=-1)
    return _restore_dtype(derivative, values)


def arc_length_derivative(values: np.ndarray, speeds: np.ndarray) -> np.ndarray:
    """弧长导数 df/ds = (df/dt) / |ψ'(t)|"""
    return fourier_derivative(values) / speeds


def trig_resample(values: np.ndarray, target_count: int) -> np.ndarray:
    """
    三角插值重采样（FFT零填充）

    参数:
        values: 长度为 N 的周期采样，最后一维为参数方向
        target_count: 目标点数 M >= N

    返回:
        在 2πi/M 处的三角插值
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if target_count == n:
        return values.copy()
    if target_count < n:
        raise ValueError(f"重采样只支持加密: {n} -> {target_count}")

    coefficients = np.fft.fft(values, axis=-1)
    padded = np.zeros(values.shape[:-1] + (target_count,), dtype=complex)
    half = n // 2
    if n % 2 == 0:
        padded[..., :half] = coefficients[..., :half]
        padded[..., target_count - half + 1:] = coefficients[..., half + 1:]
        padded[..., half] = 0.5 * coefficients[..., half]
        padded[..., target_count - half] = 0.5 * coefficients[..., half]
    else:
        padded[..., :half + 1] = coefficients[..., :half + 1]
        padded[..., target_count - half:] = coefficients[..., half + 1:]

    result = np.fft.ifft(padded, axis=-1) * (target_count / n)
    return _restore_dtype(result, values)


def significant_wave_numbers(values: np.ndarray, cutoff: float = 1e-16):
    """
    三角插值中系数不可忽略的模态

    参数:
        values: 长度为 N 的周期采样，最后一维为参数方向（前面各维取最大模）
        cutoff: 相对最大系数的截断阈值

    返回:
        (下标, 波数) 两个整数数组；全零输入返回空数组
    """
    values = np.asarray(values)
    n = values.shape[-1]
    coefficients = np.fft.fft(values, axis=-1).reshape(-1, n)
    magnitude = np.max(np.abs(coefficients), axis=0)
    index = np.flatnonzero(magnitude > cutoff * magnitude.max()) if magnitude.max() > 0 else np.array([], dtype=int)
    wave_numbers = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    return index, wave_numbers[index]


def trig_evaluate(values: np.ndarray, params: np.ndarray, cutoff: float = 1e-16) -> np.ndarray:
    """
    在任意参数点上求三角插值

    只累加 significant_wave_numbers 给出的模态，光滑密度的代价与模态数成正比。
    偶数 N 的 Nyquist 模态取 cos(N t/2)，与 trig_resample 的对半分配一致。

    参数:
        values: 形状 (..., N) 的周期采样
        params: 任意形状的参数数组

    返回:
        形状 values.shape[:-1] + params.shape
    """
    values = np.asarray(values)
    params = np.asarray(params, dtype=float)
    n = values.shape[-1]
    coefficients = np.fft.fft(values, axis=-1) / n
    index, wave_numbers = significant_wave_numbers(values, cutoff)

    lead = values.shape[:-1]
    result = np.zeros(lead + params.shape, dtype=complex)
    for k, wave_number in zip(index, wave_numbers):
        if n % 2 == 0 and k == n // 2:
            basis = np.cos(0.5 * n * params)
        else:
            basis = np.exp(1j * wave_number * params)
        result += coefficients[..., k].reshape(lead + (1,) * params.ndim) * basis
    return _restore_dtype(result, values)
