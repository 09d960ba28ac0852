# Fredkin Lab - 单缺陷扇区
"""
单缺陷扇区 H_ε^x

基: w₀·x·w₁，w₀、w₁ 为着色 Dyck 串，x 位于奇数位置 j。
H_ε^x = Σ Π_{j,j+1,j+2} + ε·(Σ Θ^x_{j,j+1,j+2} + |x⟩₁⟨x|)，
Θ^x 交换 u^k d^k x ↔ x u^k d^k。ε = 0 时 x 位置守恒，核维数为奇数位置数。
"""

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np
import structlog

from combinatorics.counting import catalan
from combinatorics.enumeration import enumerate_codes, recode
from combinatorics.words import DEFECT_TOKEN, Alphabet, PathKind
from common.errors import CapExceededError, UsageError
from configs.settings import get_cap
from defect.hopping import HeffConvention, heff_ground_energy
from hamiltonian.basis import SpinBasis
from hamiltonian.builder import HamiltonianSpec, Model, assemble
from hamiltonian.terms import ProjectorTerm, TermKind, exchange_terms, recolor_terms
from linalg.eigen import extreme_eigs
from reports.metrics import fit_loglog

logger = structlog.get_logger()


def defect_dimension(m: int, colors: int) -> int:
    """s^{(m−1)/2}·Σ_{奇 j} C_{(j−1)/2}·C_{(m−j)/2}"""
    total = sum(catalan((j - 1) // 2) * catalan((m - j) // 2) for j in range(1, m + 1, 2))
    return colors ** ((m - 1) // 2) * total


@dataclass(frozen=True, eq=False)
class DefectBasis:
    """单缺陷基

    Attributes:
        basis: 字母表含 x 的自旋基
        positions: 每个基矢中 x 的位置（1 起）
    """
    basis: SpinBasis
    positions: np.ndarray

    @property
    def m(self) -> int:
        return self.basis.length

    @property
    def dim(self) -> int:
        return self.basis.dim

    def omega(self, j: int) -> np.ndarray:
        """|ω_j⟩: x 在 j 处的均匀叠加（归一化）"""
        vector = (self.positions == j).astype(np.float64)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise UsageError("该位置没有缺陷态", j=j)
        return vector / norm


def defect_basis(m: int, colors: int = 1, *, max_dim: Optional[int] = None) -> DefectBasis:
    """枚举全部 w₀·x·w₁

    Raises:
        UsageError: m 为偶数或小于 1
        CapExceededError: 维度超过 caps.sector_dimension
    """
    if m < 1 or m % 2 == 0:
        raise UsageError("缺陷链长 m 必须是正奇数", m=m)
    limit = max_dim if max_dim is not None else get_cap("sector_dimension")
    expected = defect_dimension(m, colors)
    if expected > limit:
        raise CapExceededError("sector_dimension", expected, limit)

    alphabet = Alphabet(colors, defect=True)
    size = alphabet.size
    x = alphabet.symbol(DEFECT_TOKEN)

    codes: list[np.ndarray] = []
    positions: list[np.ndarray] = []
    for j in range(1, m + 1, 2):
        left_len, right_len = j - 1, m - j
        left = recode(enumerate_codes(left_len, colors, PathKind.DYCK), left_len, 2 * colors, size)
        right = recode(enumerate_codes(right_len, colors, PathKind.DYCK), right_len, 2 * colors, size)
        head = (left * size + x) * size**right_len
        combined = (head[:, None] + right[None, :]).ravel()
        codes.append(combined)
        positions.append(np.full(combined.size, j, dtype=np.int64))

    all_codes = np.concatenate(codes)
    all_positions = np.concatenate(positions)
    order = np.argsort(all_codes)
    basis = SpinBasis(alphabet, m, all_codes[order], "defect")
    return DefectBasis(basis, all_positions[order])


def defect_terms(m: int, colors: int, eps: float) -> list[ProjectorTerm]:
    """H_ε^x 的全部项"""
    terms = exchange_terms(m, colors) + recolor_terms(m, colors)
    if eps != 0:
        for site in range(1, m - 1):
            for k in range(1, colors + 1):
                terms.append(ProjectorTerm(
                    TermKind.DEFECT_HOP, site,
                    ((f"u{k}", f"d{k}", DEFECT_TOKEN), (DEFECT_TOKEN, f"u{k}", f"d{k}")),
                    eps,
                ))
        terms.append(ProjectorTerm(TermKind.DEFECT_PIN, 1, ((DEFECT_TOKEN,),), eps))
    return terms


def build_single_defect(
    m: int, colors: int = 1, eps: float = 1.0, *, max_dim: Optional[int] = None
) -> HamiltonianSpec:
    """单缺陷扇区上的 H_ε^x"""
    if eps < 0:
        raise UsageError("ε 不能为负", eps=eps)
    sector = defect_basis(m, colors, max_dim=max_dim)
    terms = defect_terms(m, colors, eps)
    matrix = assemble(sector.basis, terms)
    logger.info("组装单缺陷哈密顿量", m=m, colors=colors, eps=eps, dim=sector.dim)
    return HamiltonianSpec(
        matrix, sector.basis, tuple(terms), Model.SINGLE_DEFECT, m, colors, params={"eps": eps}
    )


def zero_mode_count(spec: HamiltonianSpec, tol: float = 1e-10) -> int:
    """稠密对角化后 |λ| ≤ tol 的本征值个数"""
    values = np.linalg.eigvalsh(spec.matrix.to_dense())
    return int(np.sum(np.abs(values) <= tol))


# ============================================
# 一阶微扰检查
# ============================================

@dataclass(frozen=True)
class FirstOrderCheck:
    """λ_min(H_ε^x)/ε 与 λ₁(H_eff) 的比较

    Attributes:
        heff_energy: 投影约定下的 λ₁(H_eff)
        eps: ε 序列
        ratios: λ_min(H_ε^x)/ε
        errors: |ratio − heff_energy|
        slope: log error 对 log ε 的斜率（一阶收敛时约为 1）
    """
    m: int
    colors: int
    heff_energy: float
    eps: list[float] = field(default_factory=list)
    ratios: list[float] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)
    slope: float = math.nan

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


def first_order_check(
    m: int, colors: int = 1, eps_values: Sequence[float] = (1e-1, 1e-2, 1e-3)
) -> FirstOrderCheck:
    """小 ε 下 λ_min(H_ε^x)/ε → λ₁(H_eff)"""
    target = heff_ground_energy(m, colors, HeffConvention.PROJECTED)
    ratios = []
    for eps in eps_values:
        spec = build_single_defect(m, colors, eps)
        lowest = extreme_eigs(spec.matrix, k=1, keep_vectors=False).lowest
        ratios.append(lowest / eps)
    errors = [abs(r - target) for r in ratios]
    slope = fit_loglog(list(eps_values), errors).slope if all(e > 0 for e in errors) else math.nan
    logger.info("一阶微扰检查", m=m, colors=colors, heff=target, slope=slope)
    return FirstOrderCheck(m, colors, target, list(eps_values), ratios, errors, slope)
