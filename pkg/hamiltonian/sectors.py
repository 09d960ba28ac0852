# Fredkin Lab - 对称扇区
"""
不平衡扇区分解

对每个站点串做不看颜色的栈匹配:
- p: 未匹配的下步数
- q: 未匹配的上步数
- mismatch: 是否存在颜色不一致的配对
交换与重新着色项都保持 (p, q, mismatch)，因此各扇区是不变子空间。
"""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import scipy.sparse as sp
import structlog

from combinatorics.enumeration import decode_codes
from common.errors import InvariantViolation
from hamiltonian.basis import SpinBasis
from hamiltonian.builder import HamiltonianSpec
from linalg.eigen import extreme_eigs
from linalg.sparse import SparseSymMatrix

logger = structlog.get_logger()


@dataclass(frozen=True, order=True)
class SectorLabel:
    """扇区标签"""
    p: int
    q: int
    mismatch: bool = False

    @property
    def balanced(self) -> bool:
        return self.p == 0 and self.q == 0 and not self.mismatch

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.p, "q": self.q, "mismatch": self.mismatch}


def sector_labels(basis: SpinBasis) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """批量计算 (p, q, mismatch)

    平步（Motzkin 字母表）不参与匹配；颜色栈用 s 进制整数保存。
    """
    alphabet = basis.alphabet
    colors = alphabet.colors
    symbols = decode_codes(basis.codes, basis.length, alphabet.size)
    directions = np.asarray(alphabet.directions)
    symbol_colors = np.asarray(alphabet.symbol_colors, dtype=np.int64)

    count = basis.dim
    depth = np.zeros(count, dtype=np.int64)
    stack = np.zeros(count, dtype=np.int64)
    unmatched_down = np.zeros(count, dtype=np.int64)
    mismatch = np.zeros(count, dtype=bool)

    for position in range(basis.length):
        column = symbols[:, position]
        direction = directions[column]
        color = symbol_colors[column] - 1

        up = direction == "u"
        down = (direction == "d") | (direction == "x")
        pop = down & (depth > 0)
        orphan = down & (depth == 0)

        top = stack % colors
        mismatch |= pop & (top != color) & (direction == "d")
        stack = np.where(pop, stack // colors, stack)
        depth = np.where(pop, depth - 1, depth)
        unmatched_down += orphan

        stack = np.where(up, stack * colors + color, stack)
        depth = np.where(up, depth + 1, depth)

    return unmatched_down, depth, mismatch


def sector_label(basis: SpinBasis, i: int) -> SectorLabel:
    """单个基矢的扇区"""
    single = SpinBasis(basis.alphabet, basis.length, basis.codes[i : i + 1], basis.label)
    p, q, mismatch = sector_labels(single)
    return SectorLabel(int(p[0]), int(q[0]), bool(mismatch[0]))


@dataclass(frozen=True, eq=False)
class SectorBlock:
    """扇区块

    Attributes:
        label: 扇区
        indices: 在全空间基中的下标
        matrix: 块矩阵
        lambda_min: 最小本征值
        gap: 块内两个最小本征值之差（维度 1 时为 None）
    """
    label: SectorLabel
    indices: np.ndarray
    matrix: SparseSymMatrix
    lambda_min: float
    gap: Optional[float]

    @property
    def dim(self) -> int:
        return int(self.indices.size)

    def to_dict(self) -> dict[str, Any]:
        return {
            "sector": self.label.to_dict(),
            "dim": self.dim,
            "lambda_min": self.lambda_min,
            "gap": self.gap,
        }


@dataclass(frozen=True, eq=False)
class SectorDecomposition:
    """扇区分解结果

    Attributes:
        blocks: 按标签排序的块
        off_block_max: 不同扇区之间矩阵元的最大绝对值（应为 0）
    """
    blocks: dict[SectorLabel, SectorBlock]
    off_block_max: float

    @property
    def total_dim(self) -> int:
        return sum(block.dim for block in self.blocks.values())

    def balanced(self) -> SectorBlock:
        return self.blocks[SectorLabel(0, 0, False)]

    def unbalanced(self) -> list[SectorBlock]:
        return [b for label, b in self.blocks.items() if not label.balanced]


def sector_decompose(spec: HamiltonianSpec, *, check_invariance: bool = True) -> SectorDecomposition:
    """按 (p, q, mismatch) 分解全空间哈密顿量

    Raises:
        InvariantViolation: 不同扇区之间存在非零矩阵元
    """
    p, q, mismatch = sector_labels(spec.basis)
    keys = np.stack([p, q, mismatch.astype(np.int64)], axis=1)
    unique, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).ravel()

    coo = sp.coo_matrix(spec.matrix.matrix)
    crossing = inverse[coo.row] != inverse[coo.col]
    off_block_max = float(np.abs(coo.data[crossing]).max()) if crossing.any() else 0.0
    if check_invariance and off_block_max > 0.0:
        raise InvariantViolation("扇区之间存在非零矩阵元", max_entry=off_block_max)

    blocks: dict[SectorLabel, SectorBlock] = {}
    for k, (pk, qk, mk) in enumerate(unique):
        label = SectorLabel(int(pk), int(qk), bool(mk))
        indices = np.nonzero(inverse == k)[0]
        block = spec.matrix.submatrix(indices)
        count = min(2, block.dim)
        spectrum = extreme_eigs(block, k=count, keep_vectors=False)
        gap = spectrum.spacing if count == 2 else None
        blocks[label] = SectorBlock(label, indices, block, spectrum.lowest, gap)

    logger.info(
        "扇区分解",
        model=spec.model.value,
        n=spec.n,
        colors=spec.colors,
        sectors=len(blocks),
        off_block_max=off_block_max,
    )
    return SectorDecomposition(dict(sorted(blocks.items())), off_block_max)
