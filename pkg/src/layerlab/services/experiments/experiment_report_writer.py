# -*- coding: utf-8 -*-
"""
实验报告写出模块

每个配置写一个 <label>.csv，列为 N, quantity, value, residual, observed_order；
整批运行结束后写 summary.txt，每个 (配置, 量) 一行 PASS/FAIL，末行为 OVERALL。
输出内容不含时间戳，同一输入重复运行得到逐字节相同的文件。
"""

import csv
import os
from typing import Iterable, List, Optional

from ...models.experiment_models import ExperimentResult, ExperimentRow
from ..numerics_service_base import NumericsServiceBase

CSV_COLUMNS = ("N", "quantity", "value", "residual", "observed_order")


def format_float(value: Optional[float]) -> str:
    """17 位有效数字；None 写成空串"""
    if value is None:
        return ""
    return format(float(value), ".17g")


class ExperimentReportWriter(NumericsServiceBase):
    """CSV 与摘要文件的写出"""

    def write_csv(self, rows: Iterable[ExperimentRow], out_dir: str, label: str) -> str:
        """
        写出一个配置的表格

        Returns:
            str: CSV 文件路径
        """
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, f"{label}.csv")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([
                    row.node_count,
                    row.quantity,
                    format_float(row.value),
                    format_float(row.residual),
                    format_float(row.observed_order),
                ])
        self.logger.debug(f"已写出表格: {path}")
        return path

    def summary_lines(self, results: Iterable[ExperimentResult]) -> List[str]:
        lines: List[str] = []
        overall = True
        for result in results:
            for verdict in result.verdicts:
                status = "PASS" if verdict.passed else "FAIL"
                line = (f"{status} {result.config.label} {verdict.quantity} "
                        f"residual={format(verdict.worst_residual, '.3e')} "
                        f"tolerance={format(verdict.tolerance, '.1e')}")
                if verdict.detail:
                    line += f" ({verdict.detail})"
                lines.append(line)
            overall = overall and result.passed
        lines.append(f"OVERALL {'PASS' if overall and lines else 'FAIL'}")
        return lines

    def write_summary(self, results: Iterable[ExperimentResult], out_dir: str) -> str:
        """写出 summary.txt 并返回路径"""
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, self.settings.experiments.SUMMARY_FILE_NAME)
        lines = self.summary_lines(results)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("\n".join(lines) + "\n")
        self.logger.info(f"判定摘要已写出: {path}")
        return path
