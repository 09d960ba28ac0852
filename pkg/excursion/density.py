# Fredkin Lab - 偏移面积密度
"""
Brownian 偏移面积（Airy 分布）密度

f_A(x) = (2√6 / x²) Σ_j v_j^{2/3} e^{−v_j} U(−5/6, 4/3; v_j)，v_j = 2|a_j|³ / (27x²)，
a_j 为 Airy 函数 Ai 的负零点。级数截断在 J 项，尾项按 e^{−v_j} 单调递减估计。
"""

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
import structlog
from scipy import integrate, special

from common.errors import InvariantViolation, SolverError, UsageError
from configs.settings import get_section

logger = structlog.get_logger()

KUMMER_A = -5.0 / 6.0
KUMMER_B = 4.0 / 3.0

# e^{-700} 已低于 float64 最小正规数
_UNDERFLOW = 700.0


def excursion_moments() -> tuple[float, float]:
    """Brownian 偏移面积的均值与标准差

    Returns:
        (√(π/8), √(5/12 − π/8))
    """
    mean = 0.5 * math.sqrt(math.pi / 2)
    std = math.sqrt(5.0 / 12.0 - math.pi / 8.0)
    return mean, std


def airy_zeros(count: int, *, tol: float = 1e-10) -> np.ndarray:
    """Ai 的前 count 个负零点（升序取绝对值）

    Raises:
        InvariantViolation: 某个零点处 |Ai| 超过 tol 或两侧不变号
    """
    zeros = special.ai_zeros(count)[0]
    values = special.airy(zeros)[0]
    if np.abs(values).max() > tol:
        raise InvariantViolation("Airy 零点处函数值超过容差", max_value=float(np.abs(values).max()))

    # 零点间距随 |a_j|^{-1/2} 缩小，δ 取间距的 1%
    spacing = np.abs(np.diff(np.concatenate([[0.0], zeros])))
    delta = 0.01 * spacing
    left = special.airy(zeros - delta)[0]
    right = special.airy(zeros + delta)[0]
    if np.any(np.sign(left) == np.sign(right)):
        raise InvariantViolation("Airy 零点两侧未变号")
    return zeros


@dataclass(frozen=True, eq=False)
class ExcursionDensity:
    """截断级数表示的 f_A

    Attributes:
        truncation: 级数项数 J
        zeros: Ai 的前 J 个负零点
        truncation_tol: 末项（尾部估计）容差
        lower: 数值积分下限
        upper: 数值积分上限
    """
    truncation: int
    zeros: np.ndarray
    truncation_tol: float = 1e-8
    lower: float = 0.01
    upper: float = 5.0

    def __post_init__(self) -> None:
        if self.truncation < 1 or self.zeros.size != self.truncation:
            raise UsageError("截断项数与零点数不一致", truncation=self.truncation, zeros=self.zeros.size)

    @cached_property
    def _scale(self) -> np.ndarray:
        """2|a_j|³/27，v_j = _scale/x²"""
        return 2.0 * np.abs(self.zeros) ** 3 / 27.0

    @classmethod
    def create(cls, truncation: Optional[int] = None) -> "ExcursionDensity":
        """按 lab.yaml 的 excursion 段构造"""
        section = get_section("excursion")
        count = int(truncation if truncation is not None else section.get("truncation", 40))
        return cls(
            truncation=count,
            zeros=airy_zeros(count),
            truncation_tol=float(section.get("truncation_tol", 1e-8)),
            lower=float(section.get("lower", 0.01)),
            upper=float(section.get("upper", 5.0)),
        )

    def terms(self, x: np.ndarray | float) -> np.ndarray:
        """级数各项 (len(x), J)，不含前因子"""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        if np.any(x <= 0):
            raise UsageError("f_A 只在 x > 0 上定义", min_x=float(x.min()))
        v = self._scale[None, :] / x[:, None] ** 2
        out = np.zeros_like(v)
        live = v < _UNDERFLOW
        vl = v[live]
        out[live] = vl ** (2.0 / 3.0) * np.exp(-vl) * special.hyperu(KUMMER_A, KUMMER_B, vl)
        return out

    def evaluate_with_error(self, x: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
        """f_A 值与截断误差估计（末项绝对值）"""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        prefactor = 2.0 * math.sqrt(6.0) / x**2
        terms = self.terms(x)
        values = prefactor * terms.sum(axis=1)
        tail = prefactor * np.abs(terms[:, -1])
        return values, tail

    def __call__(self, x: np.ndarray | float) -> np.ndarray | float:
        """f_A(x)

        Raises:
            UsageError: x ≤ 0
            SolverError: 截断误差超过容差
        """
        scalar = np.ndim(x) == 0
        values, tail = self.evaluate_with_error(x)
        if tail.max(initial=0.0) > self.truncation_tol:
            raise SolverError(
                "Airy 级数截断误差超过容差",
                truncation=self.truncation,
                tail=float(tail.max()),
                tol=self.truncation_tol,
            )
        return float(values[0]) if scalar else values

    def _integrate(self, weight: Optional[str] = None, wvar: float = 0.0, power: int = 0) -> float:
        def integrand(t: float) -> float:
            return float(self(t)) * t**power

        if weight is None:
            value, error = integrate.quad(integrand, self.lower, self.upper, limit=200)
        else:
            value, error = integrate.quad(
                integrand, self.lower, self.upper, weight=weight, wvar=wvar, limit=200
            )
        if not math.isfinite(value) or error > 1e-6:
            raise SolverError("数值积分失败", weight=weight, wvar=wvar, error=error)
        return float(value)

    def moment(self, power: int) -> float:
        """∫ x^power f_A(x) dx"""
        return self._integrate(power=power)

    def normalization(self) -> float:
        return self.moment(0)

    def char_function(self, theta: float) -> complex:
        """F_A(θ) = ∫ f_A(x) e^{2πixθ} dx"""
        if not math.isfinite(theta):
            raise UsageError("θ 必须有限", theta=theta)
        if theta == 0:
            return complex(self.normalization(), 0.0)
        omega = 2.0 * math.pi * theta
        real = self._integrate("cos", omega)
        imag = self._integrate("sin", omega)
        return complex(real, imag)

    def bin_average(self, edges: Sequence[float]) -> np.ndarray:
        """每个分箱上 f_A 的平均值"""
        edges = np.asarray(edges, dtype=np.float64)
        out = np.empty(edges.size - 1)
        for k, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
            a = max(a, self.lower)
            if b <= a:
                out[k] = 0.0
                continue
            out[k] = integrate.quad(lambda t: float(self(t)), a, b)[0] / (edges[k + 1] - edges[k])
        return out

    def table(self, grid: Sequence[float]) -> pd.DataFrame:
        """网格上的密度表，列 x, f_A(x)"""
        grid = np.asarray(grid, dtype=np.float64)
        return pd.DataFrame({"x": grid, "f_A(x)": self(grid)})


@lru_cache(maxsize=4)
def default_density(truncation: Optional[int] = None) -> ExcursionDensity:
    """进程内缓存的密度对象"""
    density = ExcursionDensity.create(truncation)
    logger.debug("构造 Airy 密度", truncation=density.truncation, a1=float(density.zeros[0]))
    return density


def density_f_A(x: float, truncation: Optional[int] = None) -> float:
    """f_A(x)，x > 0"""
    return float(default_density(truncation)(float(x)))


def char_function(theta: float, truncation: Optional[int] = None) -> complex:
    """F_A(θ)"""
    return default_density(truncation).char_function(theta)


def density_grid(start: float = 0.05, stop: float = 3.0, step: float = 0.05) -> np.ndarray:
    """闭区间等距网格"""
    count = int(round((stop - start) / step)) + 1
    return np.round(start + step * np.arange(count), 12)


def write_density_csv(path: Path, grid: Optional[Sequence[float]] = None) -> Path:
    """写出 x,f_A(x) 表"""
    grid = density_grid() if grid is None else grid
    frame = default_density().table(grid)
    path = Path(path)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info("写出密度表", path=str(path), points=len(frame))
    return path
