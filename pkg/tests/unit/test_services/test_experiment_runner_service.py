# -*- coding: utf-8 -*-
"""
ExperimentRunnerService 单元测试

测试实验运行的判定与输出，包括：
- 观测收敛阶的计算
- 容差的优先级与逐量判定
- CSV 与 summary.txt 的格式及可重复性
- 自检目录的配置均可通过校验，跳跃实验检查全部节点
"""

import csv
import math
import os
import sys
import tempfile
import unittest
from unittest.mock import Mock

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../..'))

from src.layerlab.models.experiment_models import ExperimentName, ExperimentRow
from src.layerlab.services.experiments.experiment_catalog import TEST_OPERATORS, selftest_configs
from src.layerlab.services.experiments.experiment_config_loader import ExperimentConfigLoader
from src.layerlab.services.experiments.experiment_report_writer import ExperimentReportWriter, format_float
from src.layerlab.services.experiments.experiment_routines import QuantityTable
from src.layerlab.services.experiments.experiment_runner_service import (
    ExperimentRunnerService, observed_order, with_observed_orders
)


def _config_data(experiment="formula1", **extra):
    data = {
        "experiment": experiment,
        "operator": {"a2": [[1.0, 0.0], [0.0, 1.0]]},
        "curve": {"kind": "circle", "N": [16, 32]},
    }
    data.update(extra)
    return data


class TestObservedOrder(unittest.TestCase):
    """观测收敛阶测试类"""

    def test_order_from_two_rows(self):
        coarse = ExperimentRow(16, "q", 0.0, 1e-2)
        fine = ExperimentRow(64, "q", 0.0, 1e-2 / 256)
        self.assertAlmostEqual(observed_order(coarse, fine), 4.0)

    def test_undefined_for_zero_or_nan(self):
        self.assertIsNone(observed_order(ExperimentRow(16, "q", 0.0, 0.0), ExperimentRow(32, "q", 0.0, 1e-3)))
        self.assertIsNone(observed_order(ExperimentRow(16, "q", 0.0, 1e-3), ExperimentRow(32, "q", 0.0, 0.0)))
        self.assertIsNone(observed_order(ExperimentRow(16, "q", 0.0, math.nan), ExperimentRow(32, "q", 0.0, 1e-3)))

    def test_orders_are_written_on_finer_rows(self):
        """交错排列的多个量各自配对，行顺序不变"""
        rows = [
            ExperimentRow(16, "a", 1.0, 1e-2),
            ExperimentRow(16, "b", 1.0, 1e-3),
            ExperimentRow(32, "a", 1.0, 1e-2 / 8),
            ExperimentRow(32, "b", 1.0, 1e-3 / 2),
        ]
        filled = with_observed_orders(rows)
        self.assertEqual([(row.node_count, row.quantity) for row in filled],
                         [(16, "a"), (16, "b"), (32, "a"), (32, "b")])
        self.assertIsNone(filled[0].observed_order)
        self.assertIsNone(filled[1].observed_order)
        self.assertAlmostEqual(filled[2].observed_order, 3.0)
        self.assertAlmostEqual(filled[3].observed_order, 1.0)


class TestVerdicts(unittest.TestCase):
    """逐量判定测试类"""

    def setUp(self):
        """测试前置设置"""
        self.runner = ExperimentRunnerService(routines=Mock(), loader=ExperimentConfigLoader())
        self.config = self.runner.loader.from_dict(_config_data())

    def tearDown(self):
        """测试后清理"""
        self.runner = None

    def test_tolerance_precedence(self):
        """配置 > 例程逐量容差 > 实验默认容差"""
        table = QuantityTable(tolerances={"special": 1e-3})
        self.assertEqual(self.runner.tolerance_for(self.config, table, "formula1"), 1e-6)
        self.assertEqual(self.runner.tolerance_for(self.config, table, "special"), 1e-3)
        overridden = self.runner.loader.from_dict(_config_data(tolerance=0.5))
        self.assertEqual(self.runner.tolerance_for(overridden, table, "special"), 0.5)

    def test_finest_residual_decides(self):
        """只看最细 N 的残差，比较为严格小于"""
        rows = with_observed_orders([
            ExperimentRow(16, "formula1", 0.0, 1.0),
            ExperimentRow(32, "formula1", 0.0, 1e-7),
        ])
        verdict, = self.runner.verdicts(self.config, QuantityTable(), rows)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.worst_residual, 1e-7)

        rows = [ExperimentRow(16, "formula1", 0.0, 1e-6)]
        verdict, = self.runner.verdicts(self.config, QuantityTable(), rows)
        self.assertFalse(verdict.passed)

    def test_low_observed_order_fails(self):
        table = QuantityTable(order_checked={"formula1"})
        config = self.runner.loader.from_dict(_config_data(tolerance=1e-2))
        rows = with_observed_orders([
            ExperimentRow(16, "formula1", 0.0, 1e-3),
            ExperimentRow(32, "formula1", 0.0, 5e-4),
        ])
        verdict, = self.runner.verdicts(config, table, rows)
        self.assertFalse(verdict.passed)
        self.assertIn("16->32", verdict.detail)

    def test_order_ignored_below_floor(self):
        """粗网格残差已在 ORDER_FLOOR 以下时不检查收敛阶"""
        table = QuantityTable(order_checked={"formula1"})
        rows = with_observed_orders([
            ExperimentRow(16, "formula1", 0.0, 1e-12),
            ExperimentRow(32, "formula1", 0.0, 1e-12),
        ])
        verdict, = self.runner.verdicts(self.config, table, rows)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.detail, "")

    def test_non_finite_residual_fails(self):
        verdict, = self.runner.verdicts(self.config, QuantityTable(), [ExperimentRow(16, "formula1", 0.0, math.nan)])
        self.assertFalse(verdict.passed)

    def test_verdict_order_follows_table(self):
        rows = [ExperimentRow(16, "zeta", 0.0, 0.0), ExperimentRow(16, "alpha", 0.0, 0.0)]
        verdicts = self.runner.verdicts(self.config, QuantityTable(), rows)
        self.assertEqual([v.quantity for v in verdicts], ["zeta", "alpha"])


class TestReports(unittest.TestCase):
    """CSV 与摘要测试类"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.routines = Mock()
        self.routines.run.return_value = QuantityTable(rows=[
            ExperimentRow(16, "formula1", 1.0, 1e-3),
            ExperimentRow(32, "formula1", 1.0, 1e-3 / 16),
        ])
        self.runner = ExperimentRunnerService(routines=self.routines, loader=ExperimentConfigLoader(),
                                              writer=ExperimentReportWriter())
        self.config = self.runner.loader.from_dict(_config_data(name="demo", tolerance=1e-3))

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_format_float(self):
        self.assertEqual(format_float(None), "")
        self.assertEqual(format_float(1.0), "1")
        self.assertEqual(format_float(0.1), "0.10000000000000001")

    def test_csv_contents(self):
        result = self.runner.run(self.config, self.temp_dir.name)
        self.assertEqual(result.csv_path, os.path.join(self.temp_dir.name, "demo.csv"))
        with open(result.csv_path, "r", encoding="utf-8", newline="") as handle:
            text = handle.read()
        self.assertNotIn("\r", text)
        rows = list(csv.reader(text.splitlines()))
        self.assertEqual(rows[0], ["N", "quantity", "value", "residual", "observed_order"])
        self.assertEqual(rows[1], ["16", "formula1", "1", "0.001", ""])
        self.assertEqual(rows[2][:2], ["32", "formula1"])
        self.assertAlmostEqual(float(rows[2][4]), 4.0)
        self.assertTrue(result.passed)

    def test_summary(self):
        result = self.runner.run(self.config, self.temp_dir.name)
        path = self.runner.write_summary([result], self.temp_dir.name)
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        self.assertEqual(lines, [
            "PASS demo formula1 residual=6.250e-05 tolerance=1.0e-03",
            "OVERALL PASS",
        ])

    def test_failed_quantity_in_summary(self):
        config = self.runner.loader.from_dict(_config_data(name="demo"))
        lines = self.runner.writer.summary_lines([self.runner.run(config, self.temp_dir.name)])
        self.assertEqual(lines, [
            "FAIL demo formula1 residual=6.250e-05 tolerance=1.0e-06",
            "OVERALL FAIL",
        ])

    def test_empty_summary_fails(self):
        self.assertEqual(self.runner.writer.summary_lines([]), ["OVERALL FAIL"])

    def test_outputs_are_reproducible(self):
        first = os.path.join(self.temp_dir.name, "first")
        second = os.path.join(self.temp_dir.name, "second")
        for out in (first, second):
            result = self.runner.run(self.config, out)
            self.runner.write_summary([result], out)
        for name in ("demo.csv", "summary.txt"):
            with open(os.path.join(first, name), "rb") as a, open(os.path.join(second, name), "rb") as b:
                self.assertEqual(a.read(), b.read())


class TestSelftestCatalog(unittest.TestCase):
    """自检目录测试类"""

    def setUp(self):
        self.loader = ExperimentConfigLoader()
        self.configs = [self.loader.from_dict(data) for data in selftest_configs()]

    def test_names_are_unique(self):
        names = [config.name for config in self.configs]
        self.assertEqual(len(names), len(set(names)))

    def test_jumps_check_every_node(self):
        """两种跳跃实验覆盖五个算子，风筝 N=256，节点步长 1"""
        for experiment in (ExperimentName.JUMP_SINGLE, ExperimentName.JUMP_DOUBLE):
            with self.subTest(experiment=experiment.value):
                jumps = [config for config in self.configs if config.experiment is experiment]
                self.assertEqual(len(jumps), len(TEST_OPERATORS))
                for config in jumps:
                    self.assertEqual(config.node_stride, 1)
                    self.assertEqual(list(config.node_counts), [256])

    def test_stride_is_forwarded(self):
        strides = {data["node_stride"] for data in selftest_configs(3) if "node_stride" in data}
        self.assertEqual(strides, {3})


if __name__ == '__main__':
    unittest.main()
