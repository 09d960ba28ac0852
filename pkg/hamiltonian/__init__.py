# Fredkin Lab - 哈密顿量模块
"""
Hamiltonian 模块

包含:
- basis: 自旋基（整数码双射）
- terms: 投影项描述与 Fredkin / Motzkin 项列表
- builder: 向量化组装、全空间与平衡扇区
- sectors: (p, q, mismatch) 扇区分解
- mapping: 映射为马尔可夫链与能隙恒等式
- entropy: 半链纠缠熵
"""

from hamiltonian.basis import SpinBasis
from hamiltonian.builder import (
    HamiltonianSpec,
    Model,
    assemble,
    balanced_basis,
    block_of,
    build_balanced_sector,
    build_fredkin,
    build_motzkin,
    motzkin_basis,
)
from hamiltonian.entropy import (
    EntropyResult,
    EntropyTrend,
    dyck_entropy_trend,
    dyck_state,
    half_chain_entropy,
    motzkin_entropy_asymptotic,
    motzkin_schmidt_rank,
    motzkin_state,
)
from hamiltonian.mapping import GapIdentity, fredkin_beta, gap, gap_identity, to_markov
from hamiltonian.sectors import (
    SectorBlock,
    SectorDecomposition,
    SectorLabel,
    sector_decompose,
    sector_label,
    sector_labels,
)
from hamiltonian.terms import ProjectorTerm, TermKind, fredkin_terms, motzkin_terms

__all__ = [
    "SpinBasis",
    "ProjectorTerm",
    "TermKind",
    "fredkin_terms",
    "motzkin_terms",
    "HamiltonianSpec",
    "Model",
    "assemble",
    "balanced_basis",
    "block_of",
    "build_fredkin",
    "build_motzkin",
    "build_balanced_sector",
    "motzkin_basis",
    "SectorLabel",
    "SectorBlock",
    "SectorDecomposition",
    "sector_label",
    "sector_labels",
    "sector_decompose",
    "GapIdentity",
    "fredkin_beta",
    "gap",
    "gap_identity",
    "to_markov",
    "EntropyResult",
    "EntropyTrend",
    "dyck_state",
    "motzkin_state",
    "half_chain_entropy",
    "dyck_entropy_trend",
    "motzkin_schmidt_rank",
    "motzkin_entropy_asymptotic",
]
