# Fredkin Lab - 次近邻跳跃模型
"""
单缺陷的有效跳跃哈密顿量

H_eff = |1⟩⟨1| + Σ_j Γ_j，Γ_j = |γ_j⟩⟨γ_j|，γ_j = α_j|j⟩ − β_j|j+2⟩。

两种约定:
- literal: α_j² = C_{m−j−2}/(2s·C_{m−j})，β_j² = C_{j−1}/(2s·C_{j+1})，j = 1..m−2
- projected: 缺陷扇区的一阶有效算符，只在奇数位置 i 上，
  α_i² = C_{a−1}/(2C_a)，a = (m−i)/2；β_i² = C_{b−1}/(2C_b)，b = (i+1)/2

两者的零能态都满足 α_j·g_j = β_j·g_{j+2}（有理数下精确成立）。
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Sequence

import numpy as np
import scipy.sparse as sp
import structlog

from combinatorics.counting import catalan
from common.errors import UsageError
from linalg.eigen import extreme_eigs
from linalg.sparse import SparseSymMatrix
from markov.chain import ChainKind, ChainSpec, validate_chain
from reports.metrics import LogLogFit, fit_loglog

logger = structlog.get_logger()


class HeffConvention(str, Enum):
    LITERAL = "literal"
    PROJECTED = "projected"


class Sublattice(str, Enum):
    ODD = "odd"
    ALL = "all"


def _check_m(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise UsageError("链长 m 必须是不小于 3 的奇数", m=m)


# ============================================
# 跳跃参数
# ============================================

@dataclass(frozen=True, eq=False)
class HoppingSpec:
    """跳跃模型

    Attributes:
        m: 链长（奇数）
        colors: 颜色数 s
        convention: literal / projected
        hops: 每个跳跃的起点 j（跳到 j+2）
        alpha_sq: α_j²（精确有理数）
        beta_sq: β_j²（精确有理数）
    """
    m: int
    colors: int
    convention: HeffConvention
    hops: tuple[int, ...]
    alpha_sq: tuple[Fraction, ...]
    beta_sq: tuple[Fraction, ...]

    def gamma(self, k: int) -> np.ndarray:
        """第 k 个跳跃的 γ 向量（长度 m，位置 1 起对应下标 0 起）"""
        j = self.hops[k]
        vector = np.zeros(self.m)
        vector[j - 1] = math.sqrt(self.alpha_sq[k])
        vector[j + 1] = -math.sqrt(self.beta_sq[k])
        return vector

    def gamma_matrix(self, k: int) -> np.ndarray:
        g = self.gamma(k)
        return np.outer(g, g)

    @cached_property
    def h_move(self) -> np.ndarray:
        """Σ Γ_j（稠密 m×m）"""
        total = np.zeros((self.m, self.m))
        for k in range(len(self.hops)):
            total += self.gamma_matrix(k)
        return total

    @property
    def h_eff(self) -> np.ndarray:
        """|1⟩⟨1| + Σ Γ_j"""
        total = self.h_move.copy()
        total[0, 0] += 1.0
        return total

    def matrix(self) -> SparseSymMatrix:
        return SparseSymMatrix(sp.csr_matrix(self.h_eff))

    def sublattice(self, which: Sublattice | str = Sublattice.ODD) -> np.ndarray:
        """位置（1 起）"""
        if Sublattice(which) is Sublattice.ODD:
            return np.arange(1, self.m + 1, 2)
        return np.arange(1, self.m + 1)


def build_heff(m: int, colors: int = 1, convention: HeffConvention | str = HeffConvention.LITERAL) -> HoppingSpec:
    """构造跳跃参数

    Raises:
        UsageError: m 为偶数或小于 3
    """
    _check_m(m)
    convention = HeffConvention(convention)
    hops: list[int] = []
    alpha: list[Fraction] = []
    beta: list[Fraction] = []

    if convention is HeffConvention.LITERAL:
        for j in range(1, m - 1):
            hops.append(j)
            alpha.append(Fraction(catalan(m - j - 2), 2 * colors * catalan(m - j)))
            beta.append(Fraction(catalan(j - 1), 2 * colors * catalan(j + 1)))
    else:
        for i in range(1, m - 1, 2):
            a = (m - i) // 2
            b = (i + 1) // 2
            hops.append(i)
            alpha.append(Fraction(catalan(a - 1), 2 * catalan(a)))
            beta.append(Fraction(catalan(b - 1), 2 * catalan(b)))

    return HoppingSpec(m, colors, convention, tuple(hops), tuple(alpha), tuple(beta))


# ============================================
# 解析零能态
# ============================================

def ground_weights(m: int, convention: HeffConvention | str = HeffConvention.LITERAL) -> list[Fraction]:
    """g_j² 的精确值（位置 1..m；projected 约定下偶数位置为 0）"""
    _check_m(m)
    if HeffConvention(convention) is HeffConvention.LITERAL:
        total = catalan(m)
        return [Fraction(catalan(j - 1) * catalan(m - j), total) for j in range(1, m + 1)]
    weights = [
        catalan((j - 1) // 2) * catalan((m - j) // 2) if j % 2 == 1 else 0
        for j in range(1, m + 1)
    ]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def analytic_ground_state(
    m: int, colors: int = 1, convention: HeffConvention | str = HeffConvention.LITERAL
) -> np.ndarray:
    """归一化 g，g_j ∝ √(C_{j−1}C_{m−j})

    颜色数不影响 g。
    """
    return np.sqrt(np.array([float(w) for w in ground_weights(m, convention)]))


def kernel_identity_exact(spec: HoppingSpec) -> bool:
    """α_j² g_j² == β_j² g_{j+2}² 对全部跳跃精确成立"""
    weights = ground_weights(spec.m, spec.convention)
    return all(
        a * weights[j - 1] == b * weights[j + 1]
        for j, a, b in zip(spec.hops, spec.alpha_sq, spec.beta_sq)
    )


def hmove_residual(spec: HoppingSpec) -> float:
    """‖H_move·g‖₂（浮点）"""
    g = analytic_ground_state(spec.m, spec.colors, spec.convention)
    return float(np.linalg.norm(spec.h_move @ g))


# ============================================
# 映射随机游走
# ============================================

def mapped_walk(
    m: int,
    colors: int = 1,
    sublattice: Sublattice | str = Sublattice.ODD,
    convention: HeffConvention | str = HeffConvention.LITERAL,
    *,
    validate: bool = True,
) -> ChainSpec:
    """P(j, j+2) = α_j²，P(j+2, j) = β_j²，π(j) ∝ g_j²

    状态为位置（1 起）；默认只取缺陷所在的奇子格。
    """
    spec = build_heff(m, colors, convention)
    sublattice = Sublattice(sublattice)
    positions = [int(p) for p in spec.sublattice(sublattice)]
    index = {p: k for k, p in enumerate(positions)}

    rows: list[int] = []
    cols: list[int] = []
    values: list[float] = []
    for j, a, b in zip(spec.hops, spec.alpha_sq, spec.beta_sq):
        if j not in index:
            continue
        rows += [index[j], index[j + 2]]
        cols += [index[j + 2], index[j]]
        values += [float(a), float(b)]

    size = len(positions)
    off = sp.coo_matrix((values, (rows, cols)), shape=(size, size)).tocsr()
    P = off + sp.diags(1.0 - np.asarray(off.sum(axis=1)).ravel())

    weights = ground_weights(m, spec.convention)
    pi = np.array([float(weights[p - 1]) for p in positions])
    pi = pi / pi.sum()

    chain = ChainSpec(
        positions,
        sp.csr_matrix(P),
        pi,
        ChainKind.HOPPING_WALK,
        m,
        colors,
        params={"sublattice": sublattice.value, "convention": spec.convention.value},
    )
    if validate:
        validate_chain(chain)
    logger.info("映射跳跃随机游走", m=m, colors=colors, sublattice=sublattice.value, states=size)
    return chain


@dataclass(frozen=True)
class WalkBounds:
    """游走转移概率与 1/(32s) ≤ P ≤ 1/(2s) 的比较"""
    min_transition: float
    max_transition: float
    lower: float
    upper: float
    max_pi_ratio: float

    @property
    def ok(self) -> bool:
        return self.lower <= self.min_transition and self.max_transition <= self.upper


def walk_bounds(chain: ChainSpec) -> WalkBounds:
    edges = [v for _, _, v in chain.edges()]
    colors = chain.colors
    return WalkBounds(
        min_transition=min(edges),
        max_transition=max(edges),
        lower=1.0 / (32 * colors),
        upper=1.0 / (2 * colors),
        max_pi_ratio=float(chain.pi.max() / chain.pi.min()),
    )


# ============================================
# 基态能量
# ============================================

def heff_ground_energy(
    m: int, colors: int = 1, convention: HeffConvention | str = HeffConvention.LITERAL
) -> float:
    """奇子格上 H_eff 的最小本征值

    偶子格与 |1⟩⟨1| 无关，H_move 在其上有零模，不计入。
    """
    spec = build_heff(m, colors, convention)
    odd = spec.sublattice(Sublattice.ODD) - 1
    block = spec.h_eff[np.ix_(odd, odd)]
    value = extreme_eigs(SparseSymMatrix.from_dense(block), k=1, keep_vectors=False).lowest
    logger.debug("H_eff 基态能量", m=m, colors=colors, convention=spec.convention.value, value=value)
    return value


@dataclass(frozen=True)
class PinnedAmplitude:
    """⟨1|g⟩² 的推导值 C_{m−1}/C_m 与另一种写法 C_m/C_{m+1}"""
    m: int
    derived: Fraction
    stated: Fraction

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "derived": float(self.derived),
            "stated": float(self.stated),
            "derived_exact": str(self.derived),
            "stated_exact": str(self.stated),
        }


def pinned_amplitude(m: int, colors: int = 1) -> PinnedAmplitude:
    """g 在位置 1 的权重"""
    weights = ground_weights(m, HeffConvention.LITERAL)
    derived = weights[0]
    return PinnedAmplitude(m, derived, Fraction(catalan(m), catalan(m + 1)))


def heff_decay_fit(ms: Sequence[int], colors: int = 1) -> tuple[list[float], LogLogFit]:
    """λ₁(H_eff) 随 m 的 log-log 拟合"""
    values = [heff_ground_energy(m, colors) for m in ms]
    return values, fit_loglog(list(ms), values)
