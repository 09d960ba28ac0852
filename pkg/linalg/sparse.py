# Fredkin Lab - 稀疏对称矩阵
"""
稀疏对称矩阵

SparseSymMatrix 包装 scipy CSR 矩阵，构造时校验方阵、有限与对称。
坐标形式按 i ≤ j 的上三角三元组导出。
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np
import scipy.sparse as sp
import structlog

from common.errors import DimensionMismatchError, InvariantViolation
from configs.settings import get_tolerance

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class SparseSymMatrix:
    """稀疏对称实矩阵

    Attributes:
        matrix: CSR 矩阵（完整存储，重复坐标已合并）
    """
    matrix: sp.csr_matrix

    def __post_init__(self) -> None:
        m = sp.csr_matrix(self.matrix, dtype=np.float64)
        m.sum_duplicates()
        m.eliminate_zeros()
        object.__setattr__(self, "matrix", m)

        if m.shape[0] != m.shape[1]:
            raise DimensionMismatchError("矩阵不是方阵", shape=m.shape)
        if not np.all(np.isfinite(m.data)):
            raise InvariantViolation("矩阵含非有限元素")
        asym = abs(m - m.T)
        if asym.nnz and asym.max() > 0.0:
            raise InvariantViolation("矩阵不对称", max_asymmetry=float(asym.max()))

    # ============================================
    # 构造
    # ============================================

    @classmethod
    def from_triples(
        cls,
        dim: int,
        rows: np.ndarray,
        cols: np.ndarray,
        values: np.ndarray,
    ) -> "SparseSymMatrix":
        """由完整坐标三元组构造（重复坐标相加）"""
        m = sp.coo_matrix((values, (rows, cols)), shape=(dim, dim)).tocsr()
        return cls(m)

    @classmethod
    def from_upper(
        cls,
        dim: int,
        rows: np.ndarray,
        cols: np.ndarray,
        values: np.ndarray,
    ) -> "SparseSymMatrix":
        """由 i ≤ j 的上三角三元组构造"""
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        values = np.asarray(values, dtype=np.float64)
        if np.any(rows > cols):
            raise ValueError("from_upper 需要 i <= j")
        off = rows != cols
        all_rows = np.concatenate([rows, cols[off]])
        all_cols = np.concatenate([cols, rows[off]])
        all_values = np.concatenate([values, values[off]])
        return cls.from_triples(dim, all_rows, all_cols, all_values)

    @classmethod
    def from_dense(cls, array: np.ndarray, *, symmetrize: bool = False) -> "SparseSymMatrix":
        """由稠密数组构造；symmetrize=True 时取 (A + Aᵀ)/2"""
        a = np.asarray(array, dtype=np.float64)
        if symmetrize:
            a = (a + a.T) / 2
        return cls(sp.csr_matrix(a))

    @classmethod
    def from_scipy(cls, matrix: sp.spmatrix, *, symmetrize: bool = False) -> "SparseSymMatrix":
        m = sp.csr_matrix(matrix, dtype=np.float64)
        if symmetrize:
            m = (m + m.T) * 0.5
        return cls(m)

    # ============================================
    # 访问
    # ============================================

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def nnz_upper(self) -> int:
        return int(sp.triu(self.matrix).nnz)

    def entries(self) -> Iterator[tuple[int, int, float]]:
        """上三角坐标三元组，按 (i, j) 排序"""
        upper = sp.triu(self.matrix).tocoo()
        order = np.lexsort((upper.col, upper.row))
        for k in order:
            yield int(upper.row[k]), int(upper.col[k]), float(upper.data[k])

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def submatrix(self, indices: np.ndarray) -> "SparseSymMatrix":
        """主子矩阵"""
        idx = np.asarray(indices)
        return SparseSymMatrix(self.matrix[idx][:, idx])

    def max_offdiagonal(self) -> float:
        """最大非对角元（用于随机性/非正性检查）"""
        off = self.matrix - sp.diags(self.matrix.diagonal())
        off = sp.csr_matrix(off)
        off.eliminate_zeros()
        return float(off.data.max()) if off.nnz else 0.0

    def max_row_sum(self) -> float:
        return float(abs(self.matrix).sum(axis=1).max()) if self.dim else 0.0

    def scaled(self, factor: float) -> "SparseSymMatrix":
        return SparseSymMatrix(self.matrix * factor)

    def dump(self, path: Path) -> Path:
        """写出坐标格式: 首行 "dim nnz"，其后每行 "i j value"（i ≤ j）"""
        lines = [f"{self.dim} {self.nnz_upper}"]
        lines += [f"{i} {j} {value:.17g}" for i, j, value in self.entries()]
        Path(path).write_text("\n".join(lines) + "\n")
        logger.debug("写出矩阵", path=str(path), dim=self.dim, nnz=self.nnz_upper)
        return Path(path)


def matvec(m: SparseSymMatrix, v: np.ndarray) -> np.ndarray:
    """稀疏矩阵乘向量"""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != m.dim:
        raise DimensionMismatchError("matvec 维度不匹配", dim=m.dim, vector=v.shape)
    return m.matrix @ v


def quadratic_form(m: SparseSymMatrix, v: np.ndarray, imag_tol: Optional[float] = None) -> float:
    """conj(v)ᵀ M v（M 实对称，结果应为实数）

    Raises:
        InvariantViolation: 虚部超过容差
    """
    v = np.asarray(v)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"quadratic_form 需要单位向量，|v| = {norm}")
    tol = imag_tol if imag_tol is not None else get_tolerance("quadratic_imag")
    value = complex(np.vdot(v, matvec(m, v)))
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise InvariantViolation("二次型虚部超过容差", imag=value.imag, tol=tol)
    return float(value.real)
