# Fredkin Lab - 扭曲试探态
"""
扭曲试探态 |φ⟩ = Σ_w e^{2πi·Ã_w·θ̃} |w⟩ / √(s^n C_n)

Ã_w 为着色 Dyck 串 w 的面积。⟨φ|H|φ⟩ 用两种方式计算并互相核对:
- direct: 平衡扇区哈密顿量上的二次型（维度不超过 caps.sector_dimension 时）
- pairs: 每个交换对改变面积 ±2，贡献 (1 − cos 4πθ̃)/N；重新着色不改变面积，贡献 0
"""

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
import structlog

from combinatorics.counting import dyck_count
from combinatorics.enumeration import areas_from_codes, enumerate_codes, window_values
from combinatorics.words import Alphabet, PathKind
from common.errors import CapExceededError, InvariantViolation, UsageError
from configs.settings import get_cap
from hamiltonian.builder import build_balanced_sector
from hamiltonian.mapping import gap
from hamiltonian.terms import TermKind, exchange_terms
from linalg.sparse import quadratic_form
from reports.metrics import LogLogFit, fit_loglog

logger = structlog.get_logger()

DUAL_EVALUATION_TOL = 1e-10

# 能量 log-log 斜率的目标上限
SCALING_SLOPE_TARGET = -1.5


def default_theta(n: int) -> float:
    """θ̃ = 1/std(Ã) = n^{−3/2} / √(10/3 − π)"""
    if n < 1:
        raise UsageError("θ̃ 需要 n >= 1", n=n)
    return n**-1.5 / math.sqrt(10.0 / 3.0 - math.pi)


def _check_cap(n: int, colors: int) -> int:
    if n < 1:
        raise UsageError("扭曲态需要 n >= 1", n=n)
    dim = dyck_count(2 * n, colors)
    limit = get_cap("twisted_states")
    if dim > limit:
        raise CapExceededError("twisted_states", dim, limit)
    return dim


@dataclass(frozen=True, eq=False)
class TwistedState:
    """扭曲试探态

    Attributes:
        codes: 着色 Dyck 串的码（升序，与平衡扇区基一致）
        areas: 各串面积 Ã_w
    """
    n: int
    colors: int
    theta_tilde: float
    codes: np.ndarray
    areas: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.codes.size)

    @property
    def amplitudes(self) -> np.ndarray:
        """e^{2πi·Ã·θ̃}/√N（复数，单位范数）"""
        phases = np.exp(2j * np.pi * self.areas * self.theta_tilde)
        return phases / math.sqrt(self.dim)

    def overlap_with_ground(self) -> complex:
        """⟨D|φ⟩ = (1/N) Σ e^{2πi·Ã·θ̃}"""
        return complex(np.exp(2j * np.pi * self.areas * self.theta_tilde).mean())


def twisted_state(n: int, colors: int = 1, theta_tilde: float = 0.0) -> TwistedState:
    """枚举着色 Dyck 串并计算面积

    Raises:
        CapExceededError: s^n·C_n 超过 caps.twisted_states
    """
    _check_cap(n, colors)
    codes = enumerate_codes(2 * n, colors, PathKind.DYCK)
    areas = areas_from_codes(codes, 2 * n, Alphabet(colors))
    return TwistedState(n, colors, float(theta_tilde), codes, areas)


def overlap_with_ground(n: int, colors: int = 1, theta_tilde: float = 0.0) -> complex:
    """⟨D|φ⟩

    面积与颜色无关，用 s = 1 的 C_n 条路径求和。
    """
    _check_cap(n, colors)
    return twisted_state(n, 1, theta_tilde).overlap_with_ground()


# ============================================
# 能量的两种算法
# ============================================

def exchange_pair_counts(state: TwistedState) -> tuple[np.ndarray, np.ndarray]:
    """每个窗口 j 的交换对数 (a_j, b_j)

    a_j: 窗口为 u·峰（uud 侧）的串数；b_j: 窗口为 d·峰（dud 侧）的串数。
    每个对只从一侧计数一次。
    """
    alphabet = Alphabet(state.colors)
    length = 2 * state.n
    sites = max(length - 2, 0)
    a = np.zeros(sites, dtype=np.int64)
    b = np.zeros(sites, dtype=np.int64)
    for term in exchange_terms(length, state.colors):
        window = window_values(state.codes, length, alphabet.size, term.site, term.width)
        hits = int(np.count_nonzero(window == alphabet.pattern_value(term.kets[0])))
        if term.kind is TermKind.UP_EXCHANGE:
            a[term.site - 1] += hits
        else:
            b[term.site - 1] += hits
    return a, b


@dataclass(frozen=True)
class TwistedEnergy:
    """⟨φ|H|φ⟩ 的两种算法结果

    Attributes:
        pair_formula: (1/N)·Σ_j (a_j + b_j)·(1 − cos 4πθ̃)
        direct: 平衡扇区上的二次型，超出上限时为 None
        small_angle: 8π²θ̃²·Σ(a_j + b_j)/N
        a: 每个窗口的 a_j
        b: 每个窗口的 b_j
    """
    n: int
    colors: int
    theta_tilde: float
    dim: int
    pair_formula: float
    direct: Optional[float]
    small_angle: float
    overlap: complex
    a: list[int] = field(default_factory=list)
    b: list[int] = field(default_factory=list)

    @property
    def energy(self) -> float:
        return self.pair_formula

    @property
    def overlap_sq(self) -> float:
        return abs(self.overlap) ** 2

    @property
    def residual(self) -> Optional[float]:
        if self.direct is None:
            return None
        return abs(self.direct - self.pair_formula)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "s": self.colors,
            "theta_tilde": self.theta_tilde,
            "dim": self.dim,
            "energy": self.pair_formula,
            "direct": self.direct,
            "residual": self.residual,
            "small_angle": self.small_angle,
            "overlap_re": self.overlap.real,
            "overlap_im": self.overlap.imag,
            "overlap_sq": self.overlap_sq,
            "a": self.a,
            "b": self.b,
        }


def twisted_energy(
    n: int,
    colors: int = 1,
    theta_tilde: float = 0.0,
    *,
    direct: Optional[bool] = None,
    tol: float = DUAL_EVALUATION_TOL,
) -> TwistedEnergy:
    """⟨φ|H|φ⟩，两种算法互相核对

    Args:
        direct: 是否做二次型计算；默认在维度不超过 caps.sector_dimension 时计算

    Raises:
        CapExceededError: s^n·C_n 超过 caps.twisted_states，或强制 direct 时超过扇区上限
        InvariantViolation: 两种算法相差超过 tol
    """
    state = twisted_state(n, colors, theta_tilde)
    a, b = exchange_pair_counts(state)
    pairs = int(a.sum() + b.sum())
    factor = 1.0 - math.cos(4.0 * math.pi * theta_tilde)
    pair_value = pairs * factor / state.dim
    small_angle = 8.0 * math.pi**2 * theta_tilde**2 * pairs / state.dim

    run_direct = direct if direct is not None else state.dim <= get_cap("sector_dimension")
    direct_value: Optional[float] = None
    if run_direct:
        spec = build_balanced_sector(n, colors)
        direct_value = quadratic_form(spec.matrix, state.amplitudes)
        if abs(direct_value - pair_value) > tol:
            logger.warning(
                "扭曲态能量两种算法不一致", n=n, colors=colors, direct=direct_value, pairs=pair_value
            )
            raise InvariantViolation(
                "扭曲态能量两种算法不一致",
                n=n,
                colors=colors,
                theta_tilde=theta_tilde,
                direct=direct_value,
                pair_formula=pair_value,
            )

    overlap = complex(np.exp(2j * np.pi * state.areas * theta_tilde).mean())
    logger.info(
        "扭曲态能量",
        n=n,
        colors=colors,
        theta_tilde=theta_tilde,
        energy=pair_value,
        direct=direct_value,
    )
    return TwistedEnergy(
        n=n,
        colors=colors,
        theta_tilde=float(theta_tilde),
        dim=state.dim,
        pair_formula=pair_value,
        direct=direct_value,
        small_angle=small_angle,
        overlap=overlap,
        a=[int(v) for v in a],
        b=[int(v) for v in b],
    )


# ============================================
# 变分不等式与标度
# ============================================

@dataclass(frozen=True)
class VariationalCheck:
    """⟨φ|H|φ⟩ ≥ Δ(H)·(1 − |⟨D|φ⟩|²)"""
    n: int
    colors: int
    theta_tilde: float
    energy: float
    gap: float
    overlap_sq: float
    tol: float

    @property
    def lower_bound(self) -> float:
        return self.gap * (1.0 - self.overlap_sq)

    @property
    def holds(self) -> bool:
        return self.energy >= self.lower_bound - self.tol

    def to_dict(self) -> dict[str, Any]:
        return {**self.__dict__, "lower_bound": self.lower_bound, "holds": self.holds}


def variational_check(
    n: int, colors: int = 1, theta_tilde: Optional[float] = None, tol: float = 1e-9
) -> VariationalCheck:
    """平衡扇区能隙给出的试探态能量下界"""
    theta = default_theta(n) if theta_tilde is None else theta_tilde
    result = twisted_energy(n, colors, theta)
    delta = gap(build_balanced_sector(n, colors)) if n >= 2 else 0.0
    return VariationalCheck(n, colors, theta, result.energy, delta, result.overlap_sq, tol)


@dataclass(frozen=True)
class TwistedScaling:
    """θ̃ = n^{−3/2}/√(10/3 − π) 时能量与重叠随 n 的变化"""
    table: pd.DataFrame
    fit: LogLogFit

    @property
    def overlap_target_met(self) -> list[bool]:
        return [bool(v <= 0.5) for v in self.table["overlap_sq"]]


def twisted_scaling(ns: Sequence[int], colors: int = 1) -> TwistedScaling:
    """n,energy,overlap_sq 表与 log-log 斜率"""
    rows = []
    for n in ns:
        result = twisted_energy(n, colors, default_theta(n), direct=False)
        rows.append({
            "n": n,
            "theta_tilde": result.theta_tilde,
            "energy": result.energy,
            "small_angle": result.small_angle,
            "overlap_sq": result.overlap_sq,
        })
    table = pd.DataFrame(rows)
    fit = fit_loglog(table["n"].tolist(), table["energy"].tolist())
    logger.info("扭曲态标度拟合", colors=colors, points=len(rows), slope=fit.slope)
    return TwistedScaling(table, fit)
