# Fredkin Lab - 日志配置
"""
structlog 配置

日志统一写到 stderr，保证 stdout 与输出文件可逐字节复现。
"""

import logging
import sys

import structlog


def configure_logging(level: str = "INFO") -> None:
    """配置 structlog

    Args:
        level: 日志级别（DEBUG/INFO/WARNING/ERROR）
    """
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        numeric = logging.INFO

    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
