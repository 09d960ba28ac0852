# Fredkin Lab - Dyck 面积统计
"""
Dyck 路径面积统计

- 枚举面积表与闭式 A_{2n} 的核对
- 缩放面积 Ã / (2√2·n^{3/2}) 的 Monte Carlo 直方图，与 f_A 比较
颜色不改变面积，着色情形沿用 s = 1 的面积分布。
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd
import structlog

from combinatorics.counting import catalan, dyck_area_closed_form, expected_dyck_area
from combinatorics.enumeration import areas_from_codes, enumerate_codes
from combinatorics.sampling import sample_dyck_areas
from combinatorics.words import Alphabet, PathKind
from common.errors import UsageError
from configs.settings import get_section
from excursion.density import default_density, excursion_moments

logger = structlog.get_logger()

# Ã ≈ c·n^{3/2}·B_ex，c = 2√2
AREA_SCALE = 2.0 * math.sqrt(2.0)

__all__ = [
    "AREA_SCALE",
    "AreaHistogram",
    "area_table",
    "dyck_area_closed_form",
    "enumerated_area_sum",
    "exact_scaled_mean",
    "mc_scaled_area",
    "scaled_area",
]


def scaled_area(areas: np.ndarray, n: int) -> np.ndarray:
    """Ã / (2√2·n^{3/2})"""
    return np.asarray(areas, dtype=np.float64) / (AREA_SCALE * n**1.5)


def exact_scaled_mean(n: int) -> float:
    """有限 n 下缩放面积的精确期望 (A_{2n}/C_n) / (2√2·n^{3/2})"""
    return expected_dyck_area(n) / (AREA_SCALE * n**1.5)


def enumerated_area_sum(n: int) -> int:
    """枚举全部长度 2n 的 Dyck 路径并求面积和"""
    codes = enumerate_codes(2 * n, 1, PathKind.DYCK)
    return int(areas_from_codes(codes, 2 * n, Alphabet(1)).sum())


def area_table(ns: range | list[int], *, enumerate_up_to: int = 12) -> pd.DataFrame:
    """面积闭式、枚举和与期望面积

    Returns:
        列 n, closed_form, enumerated（超出枚举范围为 NA）, expected_area, ratio_to_asymptotic
    """
    rows = []
    for n in ns:
        closed = dyck_area_closed_form(n)
        rows.append({
            "n": n,
            "closed_form": closed,
            "enumerated": enumerated_area_sum(n) if n <= enumerate_up_to else None,
            "expected_area": closed / catalan(n),
            "ratio_to_asymptotic": closed / catalan(n) / (math.sqrt(math.pi) * n**1.5),
        })
    frame = pd.DataFrame(rows)
    frame["enumerated"] = frame["enumerated"].astype("Int64")
    return frame


# ============================================
# Monte Carlo 直方图
# ============================================

@dataclass(frozen=True, eq=False)
class AreaHistogram:
    """缩放面积的经验分布

    Attributes:
        edges: 分箱边界
        counts: 各箱计数
        density: 经验密度 counts / (samples·width)
        reference: 各箱上 f_A 的平均值
        sup_distance: 比较网格内 |density − reference| 的最大值
        sup_distance_centered: 扣除有限 n 均值偏移后的同一距离
    """
    n: int
    colors: int
    samples: int
    seed: int
    mean: float
    std: float
    exact_mean: float
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    reference: np.ndarray
    sup_distance: float
    sup_distance_centered: float
    grid_min: float
    grid_max: float

    @property
    def limit_mean(self) -> float:
        return excursion_moments()[0]

    @property
    def limit_std(self) -> float:
        return excursion_moments()[1]

    @property
    def mean_relative_error(self) -> float:
        return abs(self.mean - self.limit_mean) / self.limit_mean

    @property
    def std_relative_error(self) -> float:
        return abs(self.std - self.limit_std) / self.limit_std

    def to_dict(self) -> dict[str, Any]:
        """直方图 JSON 主体 {grid, counts, scaled, ...}"""
        return {
            "n": self.n,
            "s": self.colors,
            "samples": self.samples,
            "seed": self.seed,
            "scaled": True,
            "grid": [float(e) for e in self.edges],
            "counts": [int(c) for c in self.counts],
            "density": [float(d) for d in self.density],
            "reference": [float(r) for r in self.reference],
            "mean": self.mean,
            "std": self.std,
            "exact_mean": self.exact_mean,
            "limit_mean": self.limit_mean,
            "limit_std": self.limit_std,
            "mean_relative_error": self.mean_relative_error,
            "std_relative_error": self.std_relative_error,
            "sup_distance": self.sup_distance,
            "sup_distance_centered": self.sup_distance_centered,
            "compare_grid": [self.grid_min, self.grid_max],
        }

    def write_json(self, path: Path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n")
        return path


def _histogram(values: np.ndarray, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    counts, _ = np.histogram(values, bins=edges)
    width = np.diff(edges)
    return counts, counts / (values.size * width)


def _sup_distance(
    density: np.ndarray, reference: np.ndarray, edges: np.ndarray, lo: float, hi: float
) -> float:
    centers = 0.5 * (edges[:-1] + edges[1:])
    mask = (centers >= lo) & (centers <= hi)
    if not mask.any():
        return math.nan
    return float(np.abs(density[mask] - reference[mask]).max())


def mc_scaled_area(
    n: int,
    colors: int = 1,
    samples: int = 100_000,
    seed: int = 0,
    *,
    bin_width: Optional[float] = None,
    workers: int = 1,
) -> AreaHistogram:
    """采样均匀 Dyck 路径的缩放面积并与 f_A 比较

    Args:
        n: 半长度（只采样，不枚举）
        colors: 颜色数（只记录，面积与颜色无关）
        samples: 样本数
        seed: 主种子
        bin_width: 分箱宽度，默认取 lab.yaml
        workers: 并行进程数（结果与之无关）
    """
    if n < 1 or samples < 2:
        raise UsageError("mc_scaled_area 需要 n >= 1 且 samples >= 2", n=n, samples=samples)

    section = get_section("excursion")
    width = float(bin_width if bin_width is not None else section.get("bin_width", 0.1))
    lo = float(section.get("grid_min", 0.2))
    hi = float(section.get("grid_max", 1.5))
    batch_size = int(get_section("monte_carlo").get("batch_size", 1000))

    areas = sample_dyck_areas(n, samples, seed, batch_size=batch_size, workers=workers)
    values = scaled_area(areas, n)

    exact_mean = exact_scaled_mean(n)
    limit_mean, _ = excursion_moments()
    centered = values - (exact_mean - limit_mean)

    top = max(float(values.max()), float(centered.max()), 2.5)
    edges = np.round(np.arange(0.0, top + width, width), 12)
    counts, density = _histogram(values, edges)
    _, centered_density = _histogram(centered, edges)
    reference = default_density().bin_average(edges)

    histogram = AreaHistogram(
        n=n,
        colors=colors,
        samples=samples,
        seed=seed,
        mean=float(values.mean()),
        std=float(values.std(ddof=1)),
        exact_mean=exact_mean,
        edges=edges,
        counts=counts,
        density=density,
        reference=reference,
        sup_distance=_sup_distance(density, reference, edges, lo, hi),
        sup_distance_centered=_sup_distance(centered_density, reference, edges, lo, hi),
        grid_min=lo,
        grid_max=hi,
    )
    logger.info(
        "面积 Monte Carlo 完成",
        n=n,
        samples=samples,
        seed=seed,
        mean=histogram.mean,
        std=histogram.std,
        sup_distance=histogram.sup_distance,
    )
    return histogram
