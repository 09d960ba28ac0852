# Fredkin Lab - 极端特征值
"""
极端特征值求解

维度低于 dense_threshold 时用 numpy 稠密对角化；
以上用 scipy eigsh（ARPACK 隐式重启 Lanczos）。
每个返回的特征对都独立复核残差 ‖Mv − λv‖。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
import structlog
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from common.errors import SolverError
from configs.settings import get_section
from linalg.sparse import SparseSymMatrix

logger = structlog.get_logger()


class Which(str, Enum):
    """取谱的哪一端"""
    SMALLEST = "smallest"
    LARGEST = "largest"


class Method(str, Enum):
    """求解方法"""
    DENSE = "dense"
    LANCZOS = "lanczos"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """极端特征值

    Attributes:
        eigenvalues: 升序特征值
        eigenvectors: 列向量，与特征值对应（可为 None）
        residuals: 每个特征对的残差范数
        method: 使用的求解方法
        tolerance: 残差容差
    """
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    residuals: np.ndarray
    method: Method
    tolerance: float

    @property
    def lowest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def highest(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def spacing(self) -> float:
        """两个最小特征值之差（最小端时即能隙）"""
        if self.eigenvalues.size < 2:
            raise SolverError("需要至少两个特征值才能计算间隔")
        return float(self.eigenvalues[1] - self.eigenvalues[0])

    def vector(self, k: int = 0) -> np.ndarray:
        if self.eigenvectors is None:
            raise SolverError("未保留特征向量")
        return self.eigenvectors[:, k]


def _solver_defaults() -> dict[str, float]:
    section = get_section("solver")
    return {
        "dense_threshold": int(section.get("dense_threshold", 2000)),
        "lanczos_tol": float(section.get("lanczos_tol", 1e-10)),
        "iteration_factor": int(section.get("iteration_factor", 10)),
    }


def _residuals(m: SparseSymMatrix, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    applied = m.matrix @ vectors
    return np.linalg.norm(applied - vectors * values[None, :], axis=0)


def extreme_eigs(
    m: SparseSymMatrix,
    k: int = 2,
    which: Which | str = Which.SMALLEST,
    tol: Optional[float] = None,
    *,
    method: Optional[Method | str] = None,
    keep_vectors: bool = True,
) -> Spectrum:
    """求 k 个极端特征值

    Args:
        m: 对称矩阵
        k: 特征值个数
        which: smallest / largest
        tol: Lanczos 容差，默认取配置
        method: 强制 dense / lanczos，默认按维度自动选择
        keep_vectors: 是否保留特征向量

    Returns:
        升序排列的 Spectrum

    Raises:
        SolverError: 不收敛或残差复核失败
    """
    which = Which(which)
    defaults = _solver_defaults()
    tol = float(tol if tol is not None else defaults["lanczos_tol"])
    dim = m.dim
    if not 1 <= k <= dim:
        raise ValueError(f"需要 1 <= k <= dim，收到 k={k}, dim={dim}")

    if method is None:
        chosen = Method.DENSE if dim < defaults["dense_threshold"] else Method.LANCZOS
    else:
        chosen = Method(method)
    if chosen is Method.LANCZOS and k >= dim - 1:
        logger.warning("Lanczos 需要 k < dim - 1，改用稠密求解", k=k, dim=dim)
        chosen = Method.DENSE

    if chosen is Method.DENSE:
        values, vectors = np.linalg.eigh(m.to_dense())
        sl = slice(0, k) if which is Which.SMALLEST else slice(dim - k, dim)
        values, vectors = values[sl], vectors[:, sl]
    else:
        rng = np.random.default_rng(0)
        start = rng.standard_normal(dim)
        maxiter = int(defaults["iteration_factor"] * dim)
        try:
            values, vectors = eigsh(
                m.matrix,
                k=k,
                which="SA" if which is Which.SMALLEST else "LA",
                tol=tol,
                maxiter=maxiter,
                v0=start,
            )
        except ArpackNoConvergence as e:
            raise SolverError(
                "Lanczos 未收敛", dim=dim, k=k, converged=len(e.eigenvalues), maxiter=maxiter
            ) from e
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]

    residuals = _residuals(m, values, vectors)
    scale = max(1.0, m.max_row_sum())
    bound = max(tol, 1e-12) * scale * 10
    if chosen is Method.DENSE:
        bound = max(bound, 1e-9 * scale)
    if np.any(residuals > bound):
        raise SolverError(
            "特征对残差复核失败",
            method=chosen.value,
            max_residual=float(residuals.max()),
            bound=bound,
        )

    logger.debug(
        "求解极端特征值",
        dim=dim,
        k=k,
        which=which.value,
        method=chosen.value,
        max_residual=float(residuals.max()),
    )
    return Spectrum(
        eigenvalues=values,
        eigenvectors=vectors if keep_vectors else None,
        residuals=residuals,
        method=chosen,
        tolerance=bound,
    )
