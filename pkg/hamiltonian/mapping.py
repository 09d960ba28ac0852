# Fredkin Lab - 哈密顿量到马尔可夫链
"""
stoquastic 无挫哈密顿量 → 可逆马尔可夫链

P(x, y) = δ_xy − β·√(π(y)/π(x))·⟨x|H|y⟩，π = ψ²，ψ 为基态。
平衡扇区取 β = 1/(2s(n−1))、ψ 均匀，得到 Δ(H) = 2s(n−1)(1 − λ₂(P))。
"""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import scipy.sparse as sp
import structlog

from combinatorics.enumeration import WordTable
from combinatorics.words import PathKind
from common.errors import InvariantViolation, UsageError
from hamiltonian.builder import HamiltonianSpec
from linalg.eigen import extreme_eigs
from markov.analysis import spectral_gap
from markov.chain import ChainKind, ChainSpec, validate_chain

logger = structlog.get_logger()


def fredkin_beta(n: int, colors: int) -> float:
    """β = 1/(2s(n−1))"""
    if n < 2:
        raise UsageError("映射需要 n >= 2", n=n)
    return 1.0 / (2 * colors * (n - 1))


def to_markov(
    spec: HamiltonianSpec,
    *,
    ground_state: Optional[np.ndarray] = None,
    beta: Optional[float] = None,
    validate: bool = True,
) -> ChainSpec:
    """把哈密顿量映射为马尔可夫链

    Args:
        spec: 哈密顿量（默认要求平衡扇区，基态均匀）
        ground_state: 正的基态向量 ψ，默认均匀
        beta: 默认 1/(2s(n−1))

    Raises:
        InvariantViolation: 出现负转移概率或违反链公理
    """
    if ground_state is None and spec.sector != "balanced":
        raise UsageError("未给基态时只能映射平衡扇区", sector=spec.sector)
    beta = fredkin_beta(spec.n, spec.colors) if beta is None else beta
    psi = np.ones(spec.dim) if ground_state is None else np.abs(np.asarray(ground_state, float))
    if np.any(psi <= 0):
        raise InvariantViolation("基态向量必须处处为正")
    psi = psi / np.linalg.norm(psi)

    H = spec.matrix.matrix
    if ground_state is None:
        P = sp.identity(spec.dim, format="csr") - beta * H
    else:
        P = sp.identity(spec.dim, format="csr") - beta * (sp.diags(1.0 / psi) @ H @ sp.diags(psi))
    P = sp.csr_matrix(P)
    P.eliminate_zeros()
    if P.nnz and P.data.min() < 0:
        logger.warning("映射链出现负转移概率", n=spec.n, colors=spec.colors, min=float(P.data.min()))
        raise InvariantViolation(
            "映射链出现负转移概率（β 过大）", beta=beta, min_entry=float(P.data.min())
        )

    basis = spec.basis
    if basis.label == "balanced":
        states: Any = WordTable(basis.codes, basis.length, basis.alphabet, PathKind.DYCK)
    else:
        states = [basis.format(i) for i in range(basis.dim)]
    chain = ChainSpec(
        states,
        P,
        psi**2,
        ChainKind.HAMILTONIAN_MAPPED,
        spec.n,
        spec.colors,
        params={"beta": beta},
    )
    if validate:
        validate_chain(chain)
    logger.info("哈密顿量映射为马尔可夫链", n=spec.n, colors=spec.colors, states=chain.num_states)
    return chain


def gap(spec: HamiltonianSpec) -> float:
    """Δ(H) = λ₂ − λ₁（两个最小本征值之差）"""
    if spec.dim < 2:
        raise UsageError("一维空间没有能隙", dim=spec.dim)
    spectrum = extreme_eigs(spec.matrix, k=2, keep_vectors=False)
    value = spectrum.spacing
    logger.info("计算能隙", model=spec.model.value, n=spec.n, colors=spec.colors, gap=value)
    return value


@dataclass(frozen=True)
class GapIdentity:
    """Δ(H) 与 2s(n−1)(1 − λ₂(P)) 的比较"""
    n: int
    colors: int
    hamiltonian_gap: float
    chain_gap: float
    scaled_chain_gap: float
    residual: float
    min_diagonal: float

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


def gap_identity(spec: HamiltonianSpec) -> GapIdentity:
    """检查平衡扇区上的能隙恒等式"""
    chain = to_markov(spec)
    delta = gap(spec)
    chain_gap = spectral_gap(chain)
    scaled = chain_gap / fredkin_beta(spec.n, spec.colors)
    return GapIdentity(
        n=spec.n,
        colors=spec.colors,
        hamiltonian_gap=delta,
        chain_gap=chain_gap,
        scaled_chain_gap=scaled,
        residual=abs(delta - scaled),
        min_diagonal=float(chain.P.diagonal().min()),
    )
