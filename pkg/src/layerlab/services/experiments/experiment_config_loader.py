# -*- coding: utf-8 -*-
"""
实验配置加载器

从JSON文件（或已解析的字典）构造 ExperimentConfig。校验逐字段进行，
全部问题收集到 field_errors 后一次性抛出 InvalidConfigError；
未知的键一律视为错误。
"""

import json
from typing import Any, Dict, Optional, Tuple

from ...models.boundary_models import CurveKind
from ...models.common import InvalidConfigError, LayerLabError, UnknownExperimentError
from ...models.experiment_models import DensityKind, DensitySpec, ExperimentConfig, ExperimentName
from ...models.kernel_models import ModulusKind, ModulusSpec
from ..numerics_service_base import NumericsServiceBase
from ..potential.boundary_geometry_service import DEFAULT_CURVE_PARAMS
from ..potential.operator_reduction_service import OperatorReductionService

TOP_LEVEL_KEYS = {
    "experiment", "operator", "curve", "density", "indices", "modulus", "seed", "output",
    "tolerance", "offsets", "node_stride", "sample_budget", "name",
}
OPERATOR_KEYS = {"a2", "a1", "a0"}
CURVE_KEYS = {"kind", "params", "N"}
DENSITY_KEYS = {"kind", "teeth"}
INDEX_KEYS = {"l", "j", "r"}
MODULUS_KEYS = {"kind", "exponent"}


def _complex(value: Any) -> complex:
    """复数写成 [re, im]，实数可直接写数值"""
    if isinstance(value, bool):
        raise TypeError("布尔值不是数值")
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise TypeError("复数必须写成 [re, im]")
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def _integer(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"需要整数，收到 {value!r}")
    return value


class ExperimentConfigLoader(NumericsServiceBase):
    """
    实验配置加载器

    使用方法：
        loader = ExperimentConfigLoader()
        config = loader.load("configs/gauss.json")
    """

    def __init__(self, reduction_service: Optional[OperatorReductionService] = None):
        super().__init__()
        self._reduction = reduction_service or OperatorReductionService()

    def load(self, path: str) -> ExperimentConfig:
        """
        读取并校验配置文件

        Raises:
            InvalidConfigError: 文件无法读取、不是JSON对象或字段无效
            UnknownExperimentError: 实验名称未登记
        """
        self.logger.info(f"加载实验配置: {path}")
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as e:
            raise InvalidConfigError({"<file>": f"无法读取配置文件: {e}"}) from e
        except json.JSONDecodeError as e:
            raise InvalidConfigError({"<file>": f"JSON格式错误: 第{e.lineno}行第{e.colno}列 {e.msg}"}) from e
        return self.from_dict(data)

    def from_dict(self, data: Any, name: str = "") -> ExperimentConfig:
        """
        从字典构造配置

        Args:
            data: 已解析的JSON对象
            name: 自检目录中的配置名（文件中的 name 键优先）
        """
        if not isinstance(data, dict):
            raise InvalidConfigError({"<root>": "配置必须是JSON对象"})

        errors: Dict[str, str] = {}
        for key in sorted(set(data) - TOP_LEVEL_KEYS):
            errors[key] = "未知的配置键"

        if "experiment" not in data:
            errors["experiment"] = "缺少必填字段"
            experiment = None
        else:
            try:
                experiment = ExperimentName(data["experiment"])
            except ValueError:
                raise UnknownExperimentError(f"未知的实验: {data['experiment']!r}")

        operator = self._parse_operator(data.get("operator"), errors)
        curve_kind, curve_params, node_counts = self._parse_curve(data.get("curve"), errors)
        density = self._parse_density(data.get("density"), errors)
        indices = self._parse_indices(data.get("indices"), errors)
        modulus = self._parse_modulus(data.get("modulus"), errors)

        seed = self._optional(data, "seed", _integer, 0, errors)
        output = self._optional(data, "output", str, self.settings.experiments.OUTPUT_DIR, errors)
        tolerance = self._optional(data, "tolerance", float, None, errors)
        if tolerance is not None and tolerance <= 0:
            errors["tolerance"] = f"容差必须为正，实际为 {tolerance}"
        offsets = self._parse_offsets(data.get("offsets"), errors)
        node_stride = self._optional(data, "node_stride", _integer, 1, errors)
        if node_stride is not None and node_stride < 1:
            errors["node_stride"] = f"节点步长必须为正整数，实际为 {node_stride}"
        sample_budget = self._optional(data, "sample_budget", _integer, None, errors)
        if sample_budget is not None and sample_budget <= 0:
            errors["sample_budget"] = f"抽样预算必须为正，实际为 {sample_budget}"
        config_name = self._optional(data, "name", str, name, errors)

        if errors:
            error = InvalidConfigError(errors)
            self._log_operation_error("校验实验配置", error)
            raise error

        return ExperimentConfig(
            experiment=experiment,
            operator=operator,
            curve_kind=curve_kind,
            curve_params=curve_params,
            node_counts=node_counts,
            density=density,
            indices=indices,
            modulus=modulus,
            seed=seed,
            output=output,
            tolerance=tolerance,
            offsets=offsets,
            node_stride=node_stride,
            sample_budget=sample_budget,
            name=config_name,
        )

    # region 字段解析

    @staticmethod
    def _optional(data: Dict[str, Any], key: str, convert, default, errors: Dict[str, str]):
        if key not in data:
            return default
        try:
            return convert(data[key])
        except (TypeError, ValueError) as e:
            errors[key] = f"取值无效: {e}"
            return default

    @staticmethod
    def _check_keys(section: str, value: Dict[str, Any], allowed, errors: Dict[str, str]) -> None:
        for key in sorted(set(value) - allowed):
            errors[f"{section}.{key}"] = "未知的配置键"

    def _parse_operator(self, value: Any, errors: Dict[str, str]):
        if value is None:
            errors["operator"] = "缺少必填字段"
            return None
        if not isinstance(value, dict):
            errors["operator"] = "必须是包含 a2, a1, a0 的对象"
            return None
        self._check_keys("operator", value, OPERATOR_KEYS, errors)
        try:
            a2 = [[float(x) for x in row] for row in value.get("a2", [[1.0, 0.0], [0.0, 1.0]])]
        except (TypeError, ValueError) as e:
            errors["operator.a2"] = f"必须是 2x2 实数矩阵: {e}"
            return None
        try:
            a1 = [_complex(x) for x in value.get("a1", [0.0, 0.0])]
        except (TypeError, ValueError) as e:
            errors["operator.a1"] = f"必须是长度为 2 的复数向量: {e}"
            return None
        try:
            a0 = _complex(value.get("a0", 0.0))
        except (TypeError, ValueError) as e:
            errors["operator.a0"] = f"必须是复数: {e}"
            return None
        try:
            return self._reduction.validate(a2, a1, a0)
        except LayerLabError as e:
            errors["operator"] = str(e)
            return None

    def _parse_curve(self, value: Any, errors: Dict[str, str]) -> Tuple[Any, Tuple[float, ...], Tuple[int, ...]]:
        if not isinstance(value, dict):
            errors["curve"] = "缺少必填字段或不是对象"
            return None, (), ()
        self._check_keys("curve", value, CURVE_KEYS, errors)
        try:
            kind = CurveKind(value.get("kind"))
        except ValueError:
            errors["curve.kind"] = f"未知的曲线: {value.get('kind')!r}，可选 {[k.value for k in CurveKind]}"
            kind = None
        try:
            params = tuple(float(p) for p in value.get("params", ()))
        except (TypeError, ValueError) as e:
            errors["curve.params"] = f"必须是实数列表: {e}"
            params = ()
        if kind is not None and "curve.params" not in errors:
            expected = len(DEFAULT_CURVE_PARAMS[kind])
            if not params:
                params = DEFAULT_CURVE_PARAMS[kind]
            elif len(params) != expected or any(p <= 0 for p in params):
                errors["curve.params"] = f"{kind.value} 需要 {expected} 个正参数，实际为 {list(params)}"

        node_counts: Tuple[int, ...] = ()
        raw_counts = value.get("N")
        if not isinstance(raw_counts, list) or not raw_counts:
            errors["curve.N"] = "必须是非空的整数列表"
        else:
            try:
                node_counts = tuple(_integer(n) for n in raw_counts)
            except TypeError as e:
                errors["curve.N"] = str(e)
            else:
                if any(n % 2 or n < 8 for n in node_counts):
                    errors["curve.N"] = f"节点数必须是不小于 8 的偶数: {list(node_counts)}"
                elif any(a >= b for a, b in zip(node_counts, node_counts[1:])):
                    errors["curve.N"] = f"节点数必须严格递增: {list(node_counts)}"
        return kind, params, node_counts

    def _parse_density(self, value: Any, errors: Dict[str, str]) -> DensitySpec:
        if value is None:
            return DensitySpec()
        if not isinstance(value, dict):
            errors["density"] = "必须是对象"
            return DensitySpec()
        self._check_keys("density", value, DENSITY_KEYS, errors)
        try:
            kind = DensityKind(value.get("kind", DensityKind.COS.value))
        except ValueError:
            errors["density.kind"] = f"未知的密度: {value.get('kind')!r}"
            return DensitySpec()
        teeth = self._optional(value, "teeth", _integer, 8, errors)
        if teeth is None or teeth < 1:
            errors["density.teeth"] = f"齿数必须为正整数，实际为 {teeth}"
            teeth = 8
        return DensitySpec(kind, teeth)

    def _parse_indices(self, value: Any, errors: Dict[str, str]) -> Tuple[int, int, int]:
        if value is None:
            return (1, 2, 1)
        if not isinstance(value, dict):
            errors["indices"] = "必须是包含 l, j, r 的对象"
            return (1, 2, 1)
        self._check_keys("indices", value, INDEX_KEYS, errors)
        result = []
        for key, default in (("l", 1), ("j", 2), ("r", 1)):
            index = value.get(key, default)
            if index not in (1, 2) or isinstance(index, bool):
                errors[f"indices.{key}"] = f"下标必须为 1 或 2，实际为 {index!r}"
                index = default
            result.append(index)
        return tuple(result)

    def _parse_modulus(self, value: Any, errors: Dict[str, str]) -> Optional[ModulusSpec]:
        if value is None:
            return None
        if not isinstance(value, dict):
            errors["modulus"] = "必须是包含 kind, exponent 的对象"
            return None
        self._check_keys("modulus", value, MODULUS_KEYS, errors)
        try:
            kind = ModulusKind(value.get("kind", ModulusKind.POWER.value))
            return ModulusSpec(kind, float(value.get("exponent")))
        except (TypeError, ValueError) as e:
            errors["modulus"] = f"Hölder模无效: {e}"
            return None

    def _parse_offsets(self, value: Any, errors: Dict[str, str]) -> Optional[Tuple[float, ...]]:
        if value is None:
            return None
        try:
            offsets = tuple(float(h) for h in value)
        except (TypeError, ValueError) as e:
            errors["offsets"] = f"必须是实数列表: {e}"
            return None
        if len(offsets) < 2 or any(h <= 0 for h in offsets) or any(a <= b for a, b in zip(offsets, offsets[1:])):
            errors["offsets"] = f"法向偏移必须为正且严格递减，至少两个: {list(offsets)}"
            return None
        return offsets

    # endregion
