# Fredkin Lab - 标度指标
"""
标度拟合与趋势指标

提供标准化的拟合与检查函数（输入为 pandas Series / 序列）。
"""

from dataclasses import asdict, dataclass
from typing import Any, Sequence

import numpy as np
import pandas as pd
from scipy import stats


@dataclass(frozen=True)
class LogLogFit:
    """log-log 线性拟合结果

    Attributes:
        slope: 斜率（标度指数）
        intercept: 截距
        r_squared: 决定系数
        stderr: 斜率标准误
        ci_low / ci_high: 斜率 95% 置信区间
        points: 参与拟合的点数
    """
    slope: float
    intercept: float
    r_squared: float
    stderr: float
    ci_low: float
    ci_high: float
    points: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def fit_loglog(x: Sequence[float] | pd.Series, y: Sequence[float] | pd.Series) -> LogLogFit:
    """拟合 log y = slope · log x + intercept

    非正值会被剔除；少于 2 个点时抛 ValueError。
    """
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    keep = (xs > 0) & (ys > 0) & np.isfinite(xs) & np.isfinite(ys)
    xs, ys = np.log(xs[keep]), np.log(ys[keep])
    if xs.size < 2:
        raise ValueError("log-log 拟合至少需要 2 个正值点")

    if xs.size == 2:
        slope = float((ys[1] - ys[0]) / (xs[1] - xs[0]))
        intercept = float(ys[0] - slope * xs[0])
        return LogLogFit(slope, intercept, 1.0, 0.0, slope, slope, 2)

    result = stats.linregress(xs, ys)
    t = float(stats.t.ppf(0.975, xs.size - 2))
    return LogLogFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=float(result.rvalue**2),
        stderr=float(result.stderr),
        ci_low=float(result.slope - t * result.stderr),
        ci_high=float(result.slope + t * result.stderr),
        points=int(xs.size),
    )


def fit_linear(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """最小二乘直线 (slope, intercept)"""
    slope, intercept = np.polyfit(np.asarray(x, float), np.asarray(y, float), 1)
    return float(slope), float(intercept)


def is_non_increasing(values: Sequence[float] | pd.Series, tol: float = 0.0) -> bool:
    """序列是否单调不增（允许 tol 的回升）"""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size < 2:
        return True
    return bool(np.all(np.diff(arr) <= tol))


def max_violation(values: Sequence[float], tol: float = 0.0) -> float:
    """单调不增序列的最大回升量"""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size < 2:
        return 0.0
    return float(max(0.0, np.diff(arr).max() - tol))


def relative_error(measured: float, reference: float) -> float:
    """相对误差 |measured − reference| / |reference|"""
    if reference == 0:
        return abs(measured)
    return abs(measured - reference) / abs(reference)
