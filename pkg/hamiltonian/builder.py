# Fredkin Lab - 哈密顿量组装
"""
哈密顿量组装

对基的全部码向量化地应用每个投影项:
窗口值 == 源模式的行，伙伴码 = 码 + (目标 − 源)·d^{L−site−w+1}，
再二分查找伙伴在基中的下标。
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import structlog

from combinatorics.enumeration import enumerate_codes, path_count, window_values
from combinatorics.words import Alphabet, PathKind
from common.errors import CapExceededError, InvariantViolation, UsageError
from configs.settings import get_cap
from hamiltonian.basis import SpinBasis
from hamiltonian.terms import ProjectorTerm, fredkin_terms, motzkin_terms
from linalg.sparse import SparseSymMatrix

logger = structlog.get_logger()


class Model(str, Enum):
    """模型"""
    FREDKIN = "fredkin"
    MOTZKIN = "motzkin"
    SINGLE_DEFECT = "single_defect"


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    """组装好的哈密顿量

    Attributes:
        matrix: 对称稀疏矩阵
        basis: 站点串基
        terms: 投影项描述
        model: 模型
        n: 半长度（单缺陷模型为链长 m）
        colors: 颜色数 s
        params: 其他构造参数（如 eps）
    """
    matrix: SparseSymMatrix
    basis: SpinBasis
    terms: tuple[ProjectorTerm, ...]
    model: Model
    n: int
    colors: int
    params: dict[str, float] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def sector(self) -> str:
        return self.basis.label

    def term_matrix(self, term: ProjectorTerm) -> SparseSymMatrix:
        """单个投影项在本基上的矩阵"""
        return assemble(self.basis, [term])

    def max_offdiagonal(self) -> float:
        return self.matrix.max_offdiagonal()

    def is_stoquastic(self) -> bool:
        return self.max_offdiagonal() <= 0.0

    def dump(self, path: Path) -> Path:
        return self.matrix.dump(path)


def assemble(basis: SpinBasis, terms: Sequence[ProjectorTerm]) -> SparseSymMatrix:
    """在给定基上组装 Σ terms

    Raises:
        InvariantViolation: 某项把基内的串映射到基外
    """
    alphabet = basis.alphabet
    d = alphabet.size
    codes = basis.codes
    windows: dict[tuple[int, int], np.ndarray] = {}

    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    values: list[np.ndarray] = []

    for term in terms:
        key = (term.site, term.width)
        if key not in windows:
            windows[key] = window_values(codes, basis.length, d, term.site, term.width)
        local = windows[key]
        shift = d ** (basis.length - (term.site - 1) - term.width)

        for source, target, value in term.local_entries(alphabet):
            hit = np.nonzero(local == source)[0]
            if hit.size == 0:
                continue
            if source == target:
                partner = hit
            else:
                partner, found = basis.lookup(codes[hit] + (target - source) * shift)
                if not np.all(found):
                    raise InvariantViolation(
                        "投影项把基内串映射到基外", term=term.describe(), basis=basis.label
                    )
            rows.append(hit)
            cols.append(partner)
            values.append(np.full(hit.size, value))

    if rows:
        matrix = SparseSymMatrix.from_triples(
            basis.dim, np.concatenate(rows), np.concatenate(cols), np.concatenate(values)
        )
    else:
        matrix = SparseSymMatrix.from_triples(basis.dim, np.zeros(0, int), np.zeros(0, int), np.zeros(0))
    return matrix


def _spin_cap(max_dim: Optional[int]) -> int:
    return max_dim if max_dim is not None else get_cap("spin_dimension")


def build_fredkin(n: int, colors: int = 1, *, max_dim: Optional[int] = None) -> HamiltonianSpec:
    """全空间 Fredkin 哈密顿量，维度 (2s)^{2n}

    Raises:
        CapExceededError: 维度超过 caps.spin_dimension
    """
    if n < 1:
        raise UsageError("Fredkin 链需要 n >= 1", n=n)
    basis = SpinBasis.full(Alphabet(colors), 2 * n, max_dim=_spin_cap(max_dim))
    terms = fredkin_terms(n, colors)
    matrix = assemble(basis, terms)
    logger.info("组装 Fredkin 哈密顿量", n=n, colors=colors, dim=basis.dim, nnz=matrix.nnz_upper)
    return HamiltonianSpec(matrix, basis, tuple(terms), Model.FREDKIN, n, colors)


def build_motzkin(n: int, colors: int = 1, *, max_dim: Optional[int] = None) -> HamiltonianSpec:
    """全空间 Motzkin 哈密顿量，维度 (2s+1)^{2n}"""
    if n < 1:
        raise UsageError("Motzkin 链需要 n >= 1", n=n)
    basis = SpinBasis.full(Alphabet(colors, flat=True), 2 * n, max_dim=_spin_cap(max_dim))
    terms = motzkin_terms(n, colors)
    matrix = assemble(basis, terms)
    logger.info("组装 Motzkin 哈密顿量", n=n, colors=colors, dim=basis.dim, nnz=matrix.nnz_upper)
    return HamiltonianSpec(matrix, basis, tuple(terms), Model.MOTZKIN, n, colors)


def balanced_basis(n: int, colors: int, *, max_dim: Optional[int] = None) -> SpinBasis:
    """着色 Dyck 串构成的平衡扇区基"""
    limit = max_dim if max_dim is not None else get_cap("sector_dimension")
    expected = path_count(2 * n, colors, PathKind.DYCK)
    if expected > limit:
        raise CapExceededError("sector_dimension", expected, limit)
    codes = enumerate_codes(2 * n, colors, PathKind.DYCK)
    return SpinBasis(Alphabet(colors), 2 * n, codes, "balanced")


def build_balanced_sector(
    n: int, colors: int = 1, *, max_dim: Optional[int] = None
) -> HamiltonianSpec:
    """平衡扇区上的 Fredkin 哈密顿量，维度 s^n·C_n

    cross 与 boundary 项在此扇区恒为零，仍参与组装以保证与全空间块逐元相同。
    """
    basis = balanced_basis(n, colors, max_dim=max_dim)
    terms = fredkin_terms(n, colors)
    matrix = assemble(basis, terms)
    logger.info("组装平衡扇区", n=n, colors=colors, dim=basis.dim, nnz=matrix.nnz_upper)
    return HamiltonianSpec(matrix, basis, tuple(terms), Model.FREDKIN, n, colors)


def motzkin_basis(n: int, colors: int) -> SpinBasis:
    """着色 Motzkin 串（Motzkin 基态的支撑）"""
    codes = enumerate_codes(2 * n, colors, PathKind.MOTZKIN)
    return SpinBasis(Alphabet(colors, flat=True), 2 * n, codes, "motzkin")


def block_of(spec: HamiltonianSpec, sub: SpinBasis) -> SparseSymMatrix:
    """全空间哈密顿量在子基上的块"""
    index, found = spec.basis.lookup(sub.codes)
    if not np.all(found):
        raise InvariantViolation("子基不在哈密顿量的基中", sub=sub.label)
    return spec.matrix.submatrix(index)
