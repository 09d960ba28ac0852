# Fredkin Lab - 马尔可夫链
"""
马尔可夫链对象与公理检查

ChainSpec 按行存储随机矩阵 P（不对称化），
对称化 D^{1/2} P D^{-1/2}（D = diag π）只在求谱时生成。
"""

from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np
import scipy.sparse as sp
import structlog

from common.errors import InvariantViolation
from configs.settings import get_tolerance
from linalg.sparse import SparseSymMatrix

logger = structlog.get_logger()


class ChainKind(str, Enum):
    """链类型"""
    FREDKIN = "fredkin"
    PEAK_DISPLACING = "peak_displacing"
    LATTICE = "lattice"
    POSITIVE_LATTICE = "positive_lattice"
    HAMILTONIAN_MAPPED = "hamiltonian_mapped"
    HOPPING_WALK = "hopping_walk"


@dataclass(frozen=True, eq=False)
class ChainSpec:
    """有限马尔可夫链

    Attributes:
        states: 状态序列（下标即矩阵下标）
        P: 行随机 CSR 矩阵
        pi: 平稳分布
        kind: 链类型
        n: 半长度（跳跃链为 m）
        colors: 颜色数 s
        label: 附加说明（如 "induced:idle"）
        params: 构造参数
    """
    states: Sequence[Hashable]
    P: sp.csr_matrix
    pi: np.ndarray
    kind: ChainKind
    n: int
    colors: int = 1
    label: str = ""
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        P = sp.csr_matrix(self.P, dtype=np.float64)
        P.sum_duplicates()
        P.eliminate_zeros()
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "pi", np.asarray(self.pi, dtype=np.float64))
        if P.shape != (len(self.states), len(self.states)) or self.pi.shape != (len(self.states),):
            raise InvariantViolation(
                "状态数、矩阵与平稳分布维度不一致",
                states=len(self.states),
                shape=P.shape,
                pi=self.pi.shape,
            )

    @property
    def num_states(self) -> int:
        return len(self.states)

    def index_of(self, state: Hashable) -> int:
        """状态 → 下标"""
        index = getattr(self.states, "index", None)
        if index is None:
            raise KeyError(state)
        return int(index(state))

    def row(self, i: int) -> dict[int, float]:
        """第 i 行非零元"""
        start, end = self.P.indptr[i], self.P.indptr[i + 1]
        return {int(j): float(v) for j, v in zip(self.P.indices[start:end], self.P.data[start:end])}

    def edges(self) -> list[tuple[int, int, float]]:
        """全部非对角正转移 (i, j, P_ij)"""
        coo = self.P.tocoo()
        mask = coo.row != coo.col
        order = np.lexsort((coo.col[mask], coo.row[mask]))
        rows, cols, data = coo.row[mask][order], coo.col[mask][order], coo.data[mask][order]
        return [(int(i), int(j), float(v)) for i, j, v in zip(rows, cols, data)]

    def min_transition(self) -> float:
        """最小非对角正转移概率"""
        edges = self.edges()
        return min(v for _, _, v in edges) if edges else 0.0

    def symmetrized(self) -> SparseSymMatrix:
        """D^{1/2} P D^{-1/2}，可逆链下为对称矩阵"""
        root = np.sqrt(self.pi)
        S = sp.diags(root) @ self.P @ sp.diags(1.0 / root)
        return SparseSymMatrix.from_scipy(S, symmetrize=True)


@dataclass(frozen=True)
class ChainDiagnostics:
    """链公理检查结果"""
    row_sum_error: float
    min_entry: float
    stationarity_residual: float
    detailed_balance: float

    def failures(self, tolerances: Optional[dict[str, float]] = None) -> list[str]:
        tol = tolerances or {
            "row_sum": get_tolerance("row_sum"),
            "stationarity": get_tolerance("stationarity"),
            "detailed_balance": get_tolerance("detailed_balance"),
        }
        failed = []
        if self.row_sum_error > tol["row_sum"]:
            failed.append("row_sum")
        if self.min_entry < 0:
            failed.append("non_negative")
        if self.stationarity_residual > tol["stationarity"]:
            failed.append("stationarity")
        if self.detailed_balance > tol["detailed_balance"]:
            failed.append("detailed_balance")
        return failed


def chain_diagnostics(chain: ChainSpec) -> ChainDiagnostics:
    """计算行和、非负性、平稳性与细致平衡偏差"""
    P = chain.P
    row_sums = np.asarray(P.sum(axis=1)).ravel()
    flow = sp.diags(chain.pi) @ P
    balance = abs(flow - flow.T)
    return ChainDiagnostics(
        row_sum_error=float(np.abs(row_sums - 1.0).max()) if chain.num_states else 0.0,
        min_entry=float(P.data.min()) if P.nnz else 0.0,
        stationarity_residual=float(np.abs(P.T @ chain.pi - chain.pi).sum()),
        detailed_balance=float(balance.max()) if balance.nnz else 0.0,
    )


def validate_chain(chain: ChainSpec) -> ChainDiagnostics:
    """检查链公理，失败抛 InvariantViolation"""
    diagnostics = chain_diagnostics(chain)
    failed = diagnostics.failures()
    if failed:
        raise InvariantViolation(
            "马尔可夫链公理检查失败",
            kind=chain.kind.value,
            failed=",".join(failed),
            row_sum_error=diagnostics.row_sum_error,
            detailed_balance=diagnostics.detailed_balance,
        )
    return diagnostics
