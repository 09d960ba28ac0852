# Fredkin Lab - 半链纠缠熵
"""
半链纠缠熵

把态按切点分成左半/右半码，组装 Schmidt 矩阵后做 SVD:
S = −Σ λ_k² log₂ λ_k²，Schmidt 秩为非零奇异值个数。
"""

import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
import structlog

from combinatorics.enumeration import enumerate_codes
from combinatorics.words import Alphabet, PathKind
from common.errors import DimensionMismatchError
from hamiltonian.basis import SpinBasis
from reports.metrics import fit_linear

logger = structlog.get_logger()

_SCHMIDT_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class EntropyResult:
    """Schmidt 分解结果"""
    entropy: float
    schmidt_rank: int
    coefficients: np.ndarray

    def to_dict(self) -> dict[str, Any]:
        return {"entropy_bits": self.entropy, "schmidt_rank": self.schmidt_rank}


def dyck_state(n: int, colors: int = 1) -> tuple[SpinBasis, np.ndarray]:
    """均匀着色 Dyck 态 |D^s⟩"""
    codes = enumerate_codes(2 * n, colors, PathKind.DYCK)
    basis = SpinBasis(Alphabet(colors), 2 * n, codes, "balanced")
    return basis, np.full(codes.size, 1.0 / math.sqrt(codes.size))


def motzkin_state(n: int, colors: int = 1) -> tuple[SpinBasis, np.ndarray]:
    """均匀着色 Motzkin 态"""
    codes = enumerate_codes(2 * n, colors, PathKind.MOTZKIN)
    basis = SpinBasis(Alphabet(colors, flat=True), 2 * n, codes, "motzkin")
    return basis, np.full(codes.size, 1.0 / math.sqrt(codes.size))


def half_chain_entropy(
    state: np.ndarray,
    basis: SpinBasis,
    cut: Optional[int] = None,
) -> EntropyResult:
    """切点处的纠缠熵（比特）

    Args:
        state: 基上的归一化振幅
        basis: 自旋基
        cut: 左半站点数，默认 L/2
    """
    state = np.asarray(state)
    if state.shape != (basis.dim,):
        raise DimensionMismatchError("态与基维度不一致", state=state.shape, dim=basis.dim)
    cut = basis.length // 2 if cut is None else cut

    right_size = basis.alphabet.size ** (basis.length - cut)
    left, left_index = np.unique(basis.codes // right_size, return_inverse=True)
    right, right_index = np.unique(basis.codes % right_size, return_inverse=True)

    schmidt = np.zeros((left.size, right.size), dtype=state.dtype)
    schmidt[np.ravel(left_index), np.ravel(right_index)] = state
    singular = np.linalg.svd(schmidt, compute_uv=False)
    singular = singular[singular > _SCHMIDT_CUTOFF * max(1.0, float(singular.max(initial=0.0)))]

    weights = singular**2
    weights = weights / weights.sum()
    entropy = float(-(weights * np.log2(weights)).sum())
    return EntropyResult(max(entropy, 0.0), int(singular.size), singular)


def motzkin_schmidt_rank(n: int, colors: int) -> int:
    """(s^{n+1} − 1)/(s − 1)，s=1 时为 n+1"""
    if colors == 1:
        return n + 1
    return (colors ** (n + 1) - 1) // (colors - 1)


def motzkin_entropy_asymptotic(n: int, colors: int) -> float:
    """大 n 渐近式（只作报告参考）"""
    sigma = math.sqrt(colors) / (2 * math.sqrt(colors) + 1)
    return (
        2 * math.log2(colors) * math.sqrt(2 * sigma / math.pi) * math.sqrt(n)
        + 0.5 * math.log2(2 * math.pi * sigma * n)
        + (0.5772156649015329 - 0.5) * math.log2(math.e)
    )


@dataclass(frozen=True)
class EntropyTrend:
    """S 对 log₂ n 的线性趋势"""
    n: list[int]
    entropy: list[float]
    slope: float
    intercept: float


def dyck_entropy_trend(ns: Sequence[int], colors: int = 1) -> EntropyTrend:
    """Dyck 态熵随 n 的增长趋势"""
    values = []
    for n in ns:
        basis, state = dyck_state(n, colors)
        values.append(half_chain_entropy(state, basis).entropy)
    slope, intercept = fit_linear([math.log2(n) for n in ns], values)
    logger.info("熵趋势", colors=colors, points=len(values), slope=slope)
    return EntropyTrend(list(ns), values, slope, intercept)
