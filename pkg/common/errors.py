# Fredkin Lab - 异常定义
"""
异常层级

所有库内异常继承 LabError，并携带 CLI 退出码:
- 0  成功
- 2  不变量失败 / 求解器失败
- 3  资源上限
- 64 用法错误
- 66 输入缺失或报告格式错误
"""

from typing import Any


class LabError(Exception):
    """实验库异常基类"""

    exit_code: int = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in sorted(self.context.items()))
        return f"{self.message} ({details})"


class UsageError(LabError, ValueError):
    """参数或配置不合法"""

    exit_code = 64


class CapExceededError(LabError):
    """请求规模超过配置上限

    Args:
        cap_name: 上限名称（configs/lab.yaml 中的键）
        requested: 请求的规模
        limit: 上限值
    """

    exit_code = 3

    def __init__(self, cap_name: str, requested: int, limit: int):
        super().__init__(
            f"超过资源上限 {cap_name}: 请求 {requested} > 上限 {limit}",
            cap=cap_name,
        )
        self.cap_name = cap_name
        self.requested = requested
        self.limit = limit


class InvariantViolation(LabError):
    """内部不变量检查失败"""

    exit_code = 2


class SolverError(LabError):
    """特征值求解不收敛或残差超标"""

    exit_code = 2


class MissingPathError(InvariantViolation):
    """参考链的边没有注册规范路径"""


class MissingInputError(LabError):
    """输入文件不存在"""

    exit_code = 66


class MalformedReportError(LabError):
    """报告文件格式错误"""

    exit_code = 66


class InvalidPathError(LabError, ValueError):
    """步序列不满足路径类型约束"""

    exit_code = 64


class NotAdjacentError(LabError, ValueError):
    """两个状态在给定链下不相邻"""

    exit_code = 64


class DimensionMismatchError(LabError, ValueError):
    """矩阵与向量维度不一致"""

    exit_code = 64
