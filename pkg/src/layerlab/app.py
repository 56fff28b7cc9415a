"""
layerlab 命令行入口

负责解析命令行参数、选择配置档案、初始化日志系统，
并把子命令分派给实验运行服务。

子命令：
- run --config <path> --out <dir>: 运行单个实验配置
- list: 列出全部实验
- selftest [--out <dir>]: 运行内置的验收配置目录

退出码：0 全部通过；1 有量超出容差；2 配置无效或实验未知；130 用户中断

使用方法：
python run.py selftest
python run.py run --config configs/gauss_identity_circle.json --out results
"""

import argparse
import os
import sys

# 项目根目录（config 包所在位置）加入Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from config import PROFILES, load_settings

from .models.common import InvalidConfigError, UnknownExperimentError
from .models.experiment_models import ExperimentName
from .services.experiments import EXPERIMENT_DESCRIPTIONS, ExperimentRunnerService
from .utils.logger import get_logger, level_from_name, log_exception, setup_logging

EXIT_OK = 0
EXIT_TOLERANCE_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_INTERRUPTED = 130


class LayerLabApplication:
    """
    layerlab 应用程序主类

    持有配置档案与实验运行服务，把每个子命令转换为退出码。
    """

    def __init__(self, verbose_mode=False, profile='default'):
        """
        初始化配置档案和分级日志系统

        参数:
            verbose_mode (bool): 控制台是否显示DEBUG信息
            profile (str): 配置档案名
        """
        self.settings = load_settings(profile)
        setup_logging(
            log_level=level_from_name(self.settings.logging.CONSOLE_LOG_LEVEL),
            enable_file_logging=self.settings.logging.ENABLE_FILE_LOGGING,
            verbose_mode=verbose_mode,
        )
        self.logger = get_logger(__name__)
        self.logger.info(f"layerlab 启动，配置档案: {profile}")
        self._runner = None

    @property
    def runner(self) -> ExperimentRunnerService:
        if self._runner is None:
            self._runner = ExperimentRunnerService()
        return self._runner

    def execute(self, args) -> int:
        """按子命令执行并返回退出码"""
        if args.command == 'list':
            return self.list_experiments()
        if args.command == 'run':
            return self.run_config(args.config, args.out)
        return self.selftest(args.out)

    def list_experiments(self) -> int:
        for experiment in ExperimentName:
            print(f"{experiment.value:<26} {EXPERIMENT_DESCRIPTIONS[experiment]}")
        return EXIT_OK

    def run_config(self, config_path, out=None) -> int:
        results = self.runner.run_file(config_path, out)
        return self._exit_code(results)

    def selftest(self, out=None) -> int:
        results = self.runner.selftest(out)
        return self._exit_code(results)

    def _exit_code(self, results) -> int:
        passed = bool(results) and all(result.passed for result in results)
        self.logger.info(f"总体判定: {'PASS' if passed else 'FAIL'}")
        return EXIT_OK if passed else EXIT_TOLERANCE_FAILED


def parse_command_line_arguments(argv=None):
    """
    解析命令行参数

    全局参数：
    -v, --verbose: 控制台也显示DEBUG级别的调试信息
    --profile: 配置档案 default / development / production

    返回:
        argparse.Namespace: 解析后的命令行参数对象
    """
    parser = argparse.ArgumentParser(
        prog='layerlab',
        description='layerlab - 常系数椭圆算子层位势的数值实验',
        epilog='使用 -v 参数可以查看详细的调试信息，便于问题排查'
    )
    parser.add_argument(
        '-v', '--verbose',
        action='store_true',
        help='启用详细日志模式，在控制台显示DEBUG级别的调试信息'
    )
    parser.add_argument(
        '--profile',
        choices=sorted(PROFILES),
        default='default',
        help='配置档案（默认 default）'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    run_parser = subparsers.add_parser('run', help='运行一个实验配置文件')
    run_parser.add_argument('--config', required=True, help='JSON格式的实验配置文件')
    run_parser.add_argument('--out', default=None, help='输出目录（缺省使用配置中的 output）')

    subparsers.add_parser('list', help='列出全部实验')

    selftest_parser = subparsers.add_parser('selftest', help='运行内置的验收配置目录')
    selftest_parser.add_argument('--out', default=None, help='输出目录（缺省为 results/selftest）')

    return parser.parse_args(argv)


def main(argv=None) -> int:
    """
    程序主入口函数

    异常处理：
    - UnknownExperimentError / InvalidConfigError: 诊断写到stderr，退出码2
    - KeyboardInterrupt: 退出码130
    - 其他异常: 记录堆栈，退出码1
    """
    args = parse_command_line_arguments(argv)
    logger = get_logger(__name__)
    try:
        app = LayerLabApplication(verbose_mode=args.verbose, profile=args.profile)
        return app.execute(args)
    except InvalidConfigError as e:
        print("实验配置无效:", file=sys.stderr)
        for path, message in sorted(e.field_errors.items()):
            print(f"  {path}: {message}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except UnknownExperimentError as e:
        print(f"{e}，可用实验: {', '.join(x.value for x in ExperimentName)}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except KeyboardInterrupt:
        print("\n运行被用户中断", file=sys.stderr)
        return EXIT_INTERRUPTED
    except Exception as e:
        log_exception(logger, "运行时发生未处理的异常")
        print(f"运行失败: {e}", file=sys.stderr)
        return EXIT_TOLERANCE_FAILED


if __name__ == "__main__":
    sys.exit(main())
