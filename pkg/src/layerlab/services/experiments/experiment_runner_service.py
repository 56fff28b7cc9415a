# -*- coding: utf-8 -*-
"""
实验运行服务模块

串联配置加载、实验例程、观测收敛阶、逐量判定与报告写出。
CLI 的 run / selftest 子命令都通过这里执行。
"""

import math
import os
from itertools import groupby
from typing import Dict, Iterable, List, Optional

from ...models.experiment_models import ExperimentConfig, ExperimentResult, ExperimentRow, QuantityVerdict
from ...utils.resource_path import get_output_dir
from ..numerics_service_base import NumericsServiceBase
from .experiment_catalog import selftest_configs
from .experiment_config_loader import ExperimentConfigLoader
from .experiment_report_writer import ExperimentReportWriter
from .experiment_routines import ExperimentRoutines, QuantityTable


def observed_order(coarse: ExperimentRow, fine: ExperimentRow) -> Optional[float]:
    """log(r_coarse / r_fine) / log(N_fine / N_coarse)，任一残差为 0 时没有定义"""
    if coarse.residual <= 0 or fine.residual <= 0:
        return None
    if not (math.isfinite(coarse.residual) and math.isfinite(fine.residual)):
        return None
    return math.log(coarse.residual / fine.residual) / math.log(fine.node_count / coarse.node_count)


def with_observed_orders(rows: Iterable[ExperimentRow]) -> List[ExperimentRow]:
    """
    给同一量的相邻两行填上观测阶（写在较细的一行）

    行的原有顺序保持不变。
    """
    rows = list(rows)
    previous: Dict[str, ExperimentRow] = {}
    result = []
    for row in rows:
        coarse = previous.get(row.quantity)
        order = observed_order(coarse, row) if coarse is not None else None
        filled = ExperimentRow(row.node_count, row.quantity, row.value, row.residual, order)
        result.append(filled)
        previous[row.quantity] = row
    return result


class ExperimentRunnerService(NumericsServiceBase):
    """
    实验运行服务

    使用方法：
        runner = ExperimentRunnerService()
        result = runner.run(runner.loader.load("gauss.json"), "out")
        runner.write_summary([result], "out")
    """

    def __init__(self, routines: Optional[ExperimentRoutines] = None,
                 loader: Optional[ExperimentConfigLoader] = None,
                 writer: Optional[ExperimentReportWriter] = None):
        super().__init__()
        self._routines = routines or ExperimentRoutines()
        self._loader = loader or ExperimentConfigLoader(self._routines.potential.reduction)
        self._writer = writer or ExperimentReportWriter()

    @property
    def loader(self) -> ExperimentConfigLoader:
        return self._loader

    @property
    def writer(self) -> ExperimentReportWriter:
        return self._writer

    # region 运行

    def run(self, config: ExperimentConfig, out: Optional[str] = None) -> ExperimentResult:
        """
        运行单个配置并写出 <label>.csv

        Args:
            out: 输出目录，缺省使用配置中的 output

        Raises:
            UnknownExperimentError / InvalidConfigError: 配置与实验不相容
        """
        out_dir = get_output_dir(out or config.output)
        self.logger.info(f"运行实验 {config.label} ({config.experiment.value}), N={list(config.node_counts)}")
        try:
            table = self._routines.run(config)
        except Exception as e:
            self._log_operation_error(f"运行实验 {config.label}", e)
            raise

        rows = with_observed_orders(table.rows)
        verdicts = self.verdicts(config, table, rows)
        csv_path = self._writer.write_csv(rows, out_dir, config.label)
        result = ExperimentResult(config, rows, verdicts, csv_path)

        for verdict in verdicts:
            level = self.logger.info if verdict.passed else self.logger.warning
            level(f"{'PASS' if verdict.passed else 'FAIL'} {config.label}/{verdict.quantity}: "
                  f"残差={verdict.worst_residual:.3e}, 容差={verdict.tolerance:.1e}"
                  + (f", {verdict.detail}" if verdict.detail else ""))
        return result

    def run_file(self, path: str, out: Optional[str] = None) -> List[ExperimentResult]:
        """加载配置文件、运行并写出 summary.txt"""
        config = self._loader.load(path)
        out_dir = get_output_dir(out or config.output)
        results = [self.run(config, out_dir)]
        self._writer.write_summary(results, out_dir)
        return results

    def selftest(self, out: Optional[str] = None) -> List[ExperimentResult]:
        """
        运行内置的验收配置目录

        每个配置写到 out/<label>/ 子目录，摘要写在 out/summary.txt。
        """
        out_dir = get_output_dir(out or os.path.join(self.settings.experiments.OUTPUT_DIR, "selftest"))
        catalog = selftest_configs(self.settings.experiments.SELFTEST_NODE_STRIDE)
        self.logger.info(f"开始自检，共 {len(catalog)} 个配置，输出目录: {out_dir}")

        results = []
        for data in catalog:
            config = self._loader.from_dict(data)
            results.append(self.run(config, os.path.join(out_dir, config.label)))
        self._writer.write_summary(results, out_dir)

        failed = [r.config.label for r in results if not r.passed]
        if failed:
            self.logger.warning(f"自检未通过的配置: {', '.join(failed)}")
        else:
            self.logger.info("自检全部通过")
        return results

    def write_summary(self, results: List[ExperimentResult], out: str) -> str:
        return self._writer.write_summary(results, out)

    # endregion

    # region 判定

    def tolerance_for(self, config: ExperimentConfig, table: QuantityTable, quantity: str) -> float:
        """配置中的 tolerance 优先，其次是例程给出的逐量容差，最后是实验默认容差"""
        if config.tolerance is not None:
            return config.tolerance
        if quantity in table.tolerances:
            return table.tolerances[quantity]
        return self.settings.tolerance_for(config.experiment.value)

    def verdicts(self, config: ExperimentConfig, table: QuantityTable,
                 rows: List[ExperimentRow]) -> List[QuantityVerdict]:
        """
        逐量判定

        以最细 N 的残差与容差比较；需要检查收敛阶的量，在粗网格残差高于
        ORDER_FLOOR 的相邻两行之间还要求观测阶不低于 MIN_OBSERVED_ORDER。
        """
        experiments = self.settings.experiments
        ordered = sorted(rows, key=lambda row: (row.quantity, row.node_count))
        by_quantity = {quantity: list(group) for quantity, group in groupby(ordered, key=lambda row: row.quantity)}

        verdicts = []
        # 按量在表中首次出现的顺序输出
        for quantity in dict.fromkeys(row.quantity for row in rows):
            series = by_quantity[quantity]
            tolerance = self.tolerance_for(config, table, quantity)
            finest = series[-1].residual
            passed = math.isfinite(finest) and finest < tolerance
            detail = ""
            if quantity in table.order_checked:
                for coarse, fine in zip(series, series[1:]):
                    if coarse.residual <= experiments.ORDER_FLOOR or fine.observed_order is None:
                        continue
                    if fine.observed_order < experiments.MIN_OBSERVED_ORDER:
                        passed = False
                        detail = (f"N={coarse.node_count}->{fine.node_count} 观测阶 "
                                  f"{fine.observed_order:.2f} < {experiments.MIN_OBSERVED_ORDER:g}")
            verdicts.append(QuantityVerdict(quantity, passed, finest, tolerance, detail))
        return verdicts

    # endregion
