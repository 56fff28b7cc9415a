# -*- coding: utf-8 -*-
"""
命令行集成测试

通过 main(argv) 端到端检查子命令与退出码：
- list 列出全部实验
- run 写出 CSV 与摘要，重复运行逐字节相同
- 配置无效、实验未知时退出码为 2，诊断写到 stderr
"""

import contextlib
import io
import json
import os
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from src.layerlab.app import EXIT_BAD_CONFIG, EXIT_OK, main
from src.layerlab.models.experiment_models import ExperimentName
from src.layerlab.utils.logger import reset_logging

GAUSS_CONFIG = {
    "name": "gauss_circle",
    "experiment": "gauss_identity",
    "operator": {"a2": [[1.0, 0.0], [0.0, 1.0]], "a1": [0.0, 0.0], "a0": 0.0},
    "curve": {"kind": "circle", "params": [1.0], "N": [64, 128]},
}


class TestCommandLine(unittest.TestCase):
    """命令行测试类"""

    def setUp(self):
        """测试前置设置"""
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        """测试后清理"""
        reset_logging()
        self.temp_dir.cleanup()

    def _write_config(self, data, name="config.json"):
        path = os.path.join(self.temp_dir.name, name)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(data, handle)
        return path

    def _main(self, argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = main(argv)
        return code, stdout.getvalue(), stderr.getvalue()

    def test_list(self):
        code, out, _ = self._main(["list"])
        self.assertEqual(code, EXIT_OK)
        for experiment in ExperimentName:
            self.assertIn(experiment.value, out)

    def test_run_gauss_identity(self):
        config_path = self._write_config(GAUSS_CONFIG)
        outputs = []
        for name in ("first", "second"):
            out_dir = os.path.join(self.temp_dir.name, name)
            code, _, _ = self._main(["run", "--config", config_path, "--out", out_dir])
            self.assertEqual(code, EXIT_OK)
            with open(os.path.join(out_dir, "gauss_circle.csv"), "rb") as handle:
                csv_bytes = handle.read()
            with open(os.path.join(out_dir, "summary.txt"), "rb") as handle:
                summary_bytes = handle.read()
            outputs.append((csv_bytes, summary_bytes))

        self.assertEqual(outputs[0], outputs[1])
        csv_lines = outputs[0][0].decode("utf-8").splitlines()
        self.assertEqual(csv_lines[0], "N,quantity,value,residual,observed_order")
        self.assertEqual(len(csv_lines), 1 + 2 * 3)
        summary = outputs[0][1].decode("utf-8").splitlines()
        self.assertEqual(summary[-1], "OVERALL PASS")
        self.assertTrue(all(line.startswith("PASS gauss_circle ") for line in summary[:-1]))

    def test_invalid_config(self):
        data = dict(GAUSS_CONFIG, curve={"kind": "circle", "N": [63]})
        code, _, err = self._main(["run", "--config", self._write_config(data)])
        self.assertEqual(code, EXIT_BAD_CONFIG)
        self.assertIn("curve.N", err)

    def test_unknown_experiment(self):
        data = dict(GAUSS_CONFIG, experiment="heat_kernel")
        code, _, err = self._main(["run", "--config", self._write_config(data)])
        self.assertEqual(code, EXIT_BAD_CONFIG)
        self.assertIn("heat_kernel", err)

    def test_incompatible_operator(self):
        """Gauss 恒等式不接受含低阶项的算子"""
        data = dict(GAUSS_CONFIG, operator={"a2": [[1.0, 0.0], [0.0, 1.0]], "a0": -1.0})
        out_dir = os.path.join(self.temp_dir.name, "bad")
        code, _, err = self._main(["run", "--config", self._write_config(data), "--out", out_dir])
        self.assertEqual(code, EXIT_BAD_CONFIG)
        self.assertIn("operator", err)

    def test_missing_config_argument(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                main(["run"])
        self.assertEqual(context.exception.code, 2)


if __name__ == '__main__':
    unittest.main()
