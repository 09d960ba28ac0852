# Fredkin Lab - 公共模块
"""
公共基础设施

包含:
- errors: 异常层级与退出码
- log: structlog 配置
"""

from common.errors import (
    CapExceededError,
    DimensionMismatchError,
    InvalidPathError,
    InvariantViolation,
    LabError,
    MalformedReportError,
    MissingInputError,
    MissingPathError,
    NotAdjacentError,
    SolverError,
    UsageError,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "LabError",
    "UsageError",
    "CapExceededError",
    "InvariantViolation",
    "SolverError",
    "MissingInputError",
    "MalformedReportError",
    "MissingPathError",
    "InvalidPathError",
    "NotAdjacentError",
    "DimensionMismatchError",
]
