# Fredkin Lab - 报告模块
"""
Reports 模块

包含:
- metrics: log-log 拟合与趋势检查
- generator: 带 metadata 的确定性 CSV / JSON 写出与 Markdown 渲染
- plots: plotly SVG 图表
- templates/: Jinja2 模板
"""

from reports.generator import (
    ReportWriter,
    RunMetadata,
    config_hash,
    dumps,
    read_csv,
    read_json,
    to_jsonable,
)
from reports.metrics import (
    LogLogFit,
    fit_linear,
    fit_loglog,
    is_non_increasing,
    max_violation,
    relative_error,
)

__all__ = [
    "LogLogFit",
    "ReportWriter",
    "RunMetadata",
    "config_hash",
    "dumps",
    "fit_linear",
    "fit_loglog",
    "is_non_increasing",
    "max_violation",
    "read_csv",
    "read_json",
    "relative_error",
    "to_jsonable",
]
