#!/usr/bin/env python3
"""日志工具模块"""

import logging
import os
from datetime import datetime
from typing import Dict, Optional, Union

# 默认日志目录与级别，可由 configure_logging 修改
_LOG_DIR = "./logs"
_LEVEL = logging.INFO
_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# 已创建的日志记录器
_LOGGERS: Dict[str, logging.Logger] = {}


def _parse_level(level: Union[int, str]) -> int:
    """把字符串级别转换为 logging 常量"""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    return value if isinstance(value, int) else logging.INFO


def _file_handler(name: str, log_dir: str, level: int) -> logging.FileHandler:
    """在 log_dir 下创建按日期命名的文件处理器"""
    os.makedirs(log_dir, exist_ok=True)
    log_file = os.path.join(log_dir, f"{name}_{datetime.now().strftime('%Y%m%d')}.log")
    handler = logging.FileHandler(log_file, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(_FORMAT))
    return handler


def setup_logger(name: str, log_dir: Optional[str] = None, level: Union[int, str, None] = None) -> logging.Logger:
    """设置日志记录器"""
    log_dir = log_dir or _LOG_DIR
    level = _parse_level(_LEVEL if level is None else level)

    logger = logging.getLogger(f"max_exposure.{name}")
    logger.setLevel(level)
    logger.propagate = False

    # 避免重复添加处理器
    if not logger.handlers:
        # 控制台输出走 stderr，stdout 留给结果记录
        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(logging.Formatter(_FORMAT))

        logger.addHandler(_file_handler(name, log_dir, level))
        logger.addHandler(console_handler)

    _LOGGERS[name] = logger
    return logger


def get_logger(name: str) -> logging.Logger:
    """获取日志记录器"""
    if name in _LOGGERS:
        return _LOGGERS[name]
    return setup_logger(name)


def configure_logging(log_dir: Optional[str] = None, level: Union[int, str, None] = None) -> None:
    """按配置调整日志目录和级别，已创建的记录器同步迁移文件处理器并调整级别"""
    global _LOG_DIR, _LEVEL
    if log_dir:
        _LOG_DIR = log_dir
    if level is not None:
        _LEVEL = _parse_level(level)

    target = os.path.abspath(_LOG_DIR)
    for name, logger in _LOGGERS.items():
        logger.setLevel(_LEVEL)
        for handler in list(logger.handlers):
            if (log_dir and isinstance(handler, logging.FileHandler)
                    and os.path.dirname(handler.baseFilename) != target):
                logger.removeHandler(handler)
                handler.close()
                logger.addHandler(_file_handler(name, _LOG_DIR, _LEVEL))
            else:
                handler.setLevel(_LEVEL)
