# -*- coding: utf-8 -*-
"""
实验目录

登记每个实验的说明（供 `layerlab list` 使用），以及自检使用的内置配置。
自检配置与用户配置文件使用同一种字典格式，经 ExperimentConfigLoader 校验。
"""

from typing import Any, Dict, List

from ...models.experiment_models import ExperimentName

EXPERIMENT_DESCRIPTIONS: Dict[ExperimentName, str] = {
    ExperimentName.JUMP_SINGLE: "单层位势梯度的跳跃关系（法向偏移 + Richardson 外推）",
    ExperimentName.JUMP_DOUBLE: "双层位势的跳跃关系 w± = ±μ/2 + w",
    ExperimentName.GAUSS_IDENTITY: "Gauss 恒等式：μ≡1 的双层位势在内部/边界/外部为 1 / 1/2 / 0",
    ExperimentName.GRADIENT_IDENTITY: "双层位势梯度恒等式（内部与外部检验点）",
    ExperimentName.FORMULA1: "Q 算子的切向导数展开公式残差",
    ExperimentName.WTG: "双层位势切向导数公式残差",
    ExperimentName.WSTAR_IDENTITY: "w_* 恒等式残差（圆上另检查 w_*[1] = 1/2）",
    ExperimentName.KERNEL_NORM: "核类范数估计在抽样预算翻两番时的相对变化",
    ExperimentName.REGULARITY: "粗糙密度的双层位势 Hölder 商在 N 加倍时的增长",
    ExperimentName.CONSTANTS: "分部积分恒等式与边界几何常数",
    ExperimentName.SPECFUN_CHECK: "柱函数对照扩展精度参考值、径向剖面 ODE 与 Wronski 关系",
    ExperimentName.SINGLE_LAYER_CLOSED_FORM: "圆上常密度单层位势的闭式值 ρ ln ρ",
}

LAPLACE = {"a2": [[1.0, 0.0], [0.0, 1.0]], "a1": [0.0, 0.0], "a0": 0.0}

# 五个测试算子
TEST_OPERATORS: Dict[str, Dict[str, Any]] = {
    "laplace": LAPLACE,
    "helmholtz": {"a2": [[1.0, 0.0], [0.0, 1.0]], "a1": [0.0, 0.0], "a0": 1.0},
    "yukawa": {"a2": [[1.0, 0.0], [0.0, 1.0]], "a1": [0.0, 0.0], "a0": -1.0},
    "anisotropic": {"a2": [[4.0, 0.0], [0.0, 1.0]], "a1": [0.0, 0.0], "a0": 0.0},
    "drift": {"a2": [[1.0, 0.0], [0.0, 1.0]], "a1": [2.0, 0.0], "a0": 1.0},
}

KITE = {"kind": "kite", "params": []}


def _config(name: str, experiment: ExperimentName, operator: Dict[str, Any], curve: Dict[str, Any],
            node_counts: List[int], **extra: Any) -> Dict[str, Any]:
    data = {
        "name": name,
        "experiment": experiment.value,
        "operator": operator,
        "curve": dict(curve, N=list(node_counts)),
    }
    data.update(extra)
    return data


def selftest_configs(node_stride: int = 1) -> List[Dict[str, Any]]:
    """
    自检使用的内置配置列表

    Args:
        node_stride: 跳跃实验的节点步长，缺省检查全部节点
    """
    configs: List[Dict[str, Any]] = []

    for kind, params in (("circle", [1.0]), ("ellipse", [2.0, 1.0]), ("kite", [])):
        configs.append(_config(f"gauss_identity_{kind}", ExperimentName.GAUSS_IDENTITY, LAPLACE,
                               {"kind": kind, "params": params}, [64, 128]))

    for radius in (1.0, 2.0):
        configs.append(_config(f"single_layer_closed_form_r{radius:g}", ExperimentName.SINGLE_LAYER_CLOSED_FORM,
                               LAPLACE, {"kind": "circle", "params": [radius]}, [64]))

    for label, operator in TEST_OPERATORS.items():
        for experiment in (ExperimentName.JUMP_DOUBLE, ExperimentName.JUMP_SINGLE):
            configs.append(_config(f"{experiment.value}_{label}", experiment, operator, KITE, [256],
                                   density={"kind": "cos"}, node_stride=node_stride))

    for label in ("laplace", "drift"):
        configs.append(_config(f"gradient_identity_{label}", ExperimentName.GRADIENT_IDENTITY,
                               TEST_OPERATORS[label], KITE, [128, 256], density={"kind": "cos"}))

    for label, operator in TEST_OPERATORS.items():
        configs.append(_config(f"formula1_{label}", ExperimentName.FORMULA1, operator, KITE, [128, 256],
                               density={"kind": "cos"}, indices={"l": 1, "j": 2, "r": 1}))
        configs.append(_config(f"wtg_{label}", ExperimentName.WTG, operator, KITE, [128, 256],
                               density={"kind": "cos"}, indices={"l": 1, "j": 2, "r": 1}))
        configs.append(_config(f"wstar_identity_{label}", ExperimentName.WSTAR_IDENTITY, operator, KITE, [128],
                               density={"kind": "cos"}))
    configs.append(_config("wstar_identity_circle", ExperimentName.WSTAR_IDENTITY, LAPLACE,
                           {"kind": "circle", "params": [1.0]}, [128], density={"kind": "cos"}))

    for label in ("laplace", "anisotropic"):
        configs.append(_config(f"kernel_norm_{label}", ExperimentName.KERNEL_NORM, TEST_OPERATORS[label],
                               KITE, [256], modulus={"kind": "power", "exponent": 0.5}, seed=0))

    configs.append(_config("regularity_kite", ExperimentName.REGULARITY, LAPLACE, KITE, [64, 128, 256, 512],
                           density={"kind": "rough_sawtooth", "teeth": 8},
                           modulus={"kind": "power", "exponent": 0.9}))

    configs.append(_config("constants_circle", ExperimentName.CONSTANTS, LAPLACE,
                           {"kind": "circle", "params": [1.0]}, [64, 128],
                           modulus={"kind": "power", "exponent": 1.0}, sample_budget=2 ** 16))
    configs.append(_config("constants_kite", ExperimentName.CONSTANTS, LAPLACE, KITE, [64, 128],
                           modulus={"kind": "power", "exponent": 0.5}, sample_budget=2 ** 16))

    configs.append(_config("specfun_check", ExperimentName.SPECFUN_CHECK, LAPLACE,
                           {"kind": "circle", "params": [1.0]}, [64]))
    return configs
