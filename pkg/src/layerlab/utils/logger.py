"""
日志管理工具

提供layerlab的统一日志记录功能：控制台与文件分级输出、
第三方库降噪、函数耗时装饰器和异常记录。

使用示例：
    from layerlab.utils.logger import get_logger

    logger = get_logger(__name__)
    logger.info("实验开始")
    logger.error("发生错误", exc_info=True)
"""

import functools
import logging
import time

from config.settings import get_settings

from .resource_path import get_log_path


_logger_initialized = False
_loggers = {}


def setup_logging(log_level=logging.INFO, enable_file_logging=True, enable_console_logging=True, verbose_mode=False):
    """
    设置分级日志系统

    - 控制台输出：标准模式只显示INFO及以上，verbose模式显示DEBUG
    - 文件输出：始终记录DEBUG及以上的全部信息

    参数:
        log_level (int): 控制台在标准模式下的最低级别，默认为INFO
        enable_file_logging (bool): 是否启用文件日志
        enable_console_logging (bool): 是否启用控制台日志
        verbose_mode (bool): 详细模式，控制台也显示DEBUG信息
    """
    global _logger_initialized

    if _logger_initialized:
        return

    # 根记录器设为最低级别，由handler控制过滤
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    root_logger.handlers.clear()

    formatter = create_log_formatter()

    if enable_console_logging:
        root_logger.addHandler(create_console_handler(formatter, verbose_mode, log_level))

    if enable_file_logging:
        file_handler = create_file_handler(formatter)
        if file_handler:
            root_logger.addHandler(file_handler)

    configure_third_party_loggers()

    _logger_initialized = True

    logger = get_logger(__name__)
    mode_desc = "详细模式" if verbose_mode else "标准模式"
    logger.info(f"日志系统初始化完成 - {mode_desc}")


def reset_logging():
    """移除全部处理器并允许重新初始化（CLI重复调用与测试使用）"""
    global _logger_initialized
    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        handler.close()
        root_logger.removeHandler(handler)
    _logger_initialized = False


def create_log_formatter():
    """
    创建日志格式器

    格式与日期格式取自 LoggingSettings。

    返回:
        logging.Formatter: 配置好的日志格式器
    """
    logging_settings = get_settings().logging
    return logging.Formatter(logging_settings.LOG_FORMAT, logging_settings.DATE_FORMAT)


def create_console_handler(formatter, verbose_mode=False, log_level=logging.INFO):
    """
    创建控制台日志处理器

    参数:
        formatter (logging.Formatter): 日志格式器
        verbose_mode (bool): True时显示DEBUG信息
        log_level (int): 标准模式下的级别

    返回:
        logging.StreamHandler: 控制台处理器
    """
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.DEBUG if verbose_mode else log_level)
    return console_handler


def create_file_handler(formatter):
    """
    创建文件日志处理器

    每次启动清空旧日志，只保留当前会话，UTF-8编码。

    参数:
        formatter (logging.Formatter): 日志格式器

    返回:
        FileHandler: 文件处理器，创建失败时返回None
    """
    try:
        log_file_path = get_log_file_path()
        file_handler = logging.FileHandler(log_file_path, mode='w', encoding='utf-8')
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)
        return file_handler
    except OSError as e:
        # 日志系统尚未就绪，只能用print
        print(f"创建文件日志处理器失败: {e}")
        return None


def configure_third_party_loggers():
    """把数值计算第三方库的日志级别提高到WARNING"""
    for logger_name in ("mpmath", "scipy", "numpy", "matplotlib"):
        logging.getLogger(logger_name).setLevel(logging.WARNING)


def get_logger(name):
    """
    获取指定名称的日志记录器

    参数:
        name (str): 日志记录器名称，通常使用__name__

    返回:
        logging.Logger: 日志记录器实例
    """
    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)
    _loggers[name] = logger
    return logger


def log_function_call(func):
    """
    函数调用日志装饰器

    记录函数的调用和执行耗时，失败时记录ERROR并重新抛出。

    使用示例:
        @log_function_call
        def run_gauss_identity(config):
            ...
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger(func.__module__)

        start_time = time.perf_counter()
        logger.debug(f"调用函数: {func.__name__}")

        try:
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time
            logger.debug(f"函数 {func.__name__} 执行完成，耗时: {execution_time:.3f}秒")
            return result

        except Exception as e:
            execution_time = time.perf_counter() - start_time
            logger.error(f"函数 {func.__name__} 执行失败，耗时: {execution_time:.3f}秒，错误: {e}")
            raise

    return wrapper


def log_exception(logger, message="发生未处理的异常"):
    """
    记录异常信息（含堆栈）

    使用示例:
        try:
            run_experiment(config)
        except Exception:
            log_exception(logger, "运行实验时发生异常")
    """
    logger.error(message, exc_info=True)


def get_log_file_path():
    """获取当前日志文件的路径"""
    return get_log_path(get_settings().logging.LOG_FILE_NAME)


def level_from_name(name: str) -> int:
    """把 'INFO' 之类的级别名转换为 logging 常量，未知名称退回INFO"""
    level = logging.getLevelName(str(name).upper())
    return level if isinstance(level, int) else logging.INFO
