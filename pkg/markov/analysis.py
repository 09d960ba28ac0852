# Fredkin Lab - 谱隙与混合分析
"""
谱隙与混合时间分析

包含:
- spectral_gap / absolute_spectral_gap: 对称化后求 1 − λ₁ 与 1 − λ*
- tv_mixing_curve: 精确分布演化得到 Δ_x0(t)
- mixing_time_bounds: 上界 log(1/(π(x)ε))/(1−λ) 与下界 λ/(2(1−λ))·log(1/(2ε))
- relaxation_scaling: 弛豫时间相对 n³ log n 的拟合（只报告）
- fredkin_gap_constant / peak_displacing_gap_bound: 隐含常数与峰位移链下界
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
import structlog

from common.errors import CapExceededError, UsageError
from configs.settings import get_cap, get_section, get_tolerance
from linalg.eigen import Which, extreme_eigs
from markov.chain import ChainSpec
from reports.metrics import LogLogFit, fit_loglog, is_non_increasing

logger = structlog.get_logger()


# ============================================
# 谱隙
# ============================================

def second_eigenvalue(chain: ChainSpec) -> float:
    """λ₁：P 的第二大特征值"""
    if chain.num_states == 1:
        return -math.inf
    spectrum = extreme_eigs(chain.symmetrized(), k=2, which=Which.LARGEST, keep_vectors=False)
    return float(spectrum.eigenvalues[0])


def smallest_eigenvalue(chain: ChainSpec) -> float:
    """λ_min：P 的最小特征值"""
    if chain.num_states == 1:
        return 1.0
    spectrum = extreme_eigs(chain.symmetrized(), k=1, which=Which.SMALLEST, keep_vectors=False)
    return float(spectrum.eigenvalues[0])


def spectral_gap(chain: ChainSpec) -> float:
    """谱隙 1 − λ₁

    单状态链没有第二特征值，返回 inf。
    """
    if chain.num_states == 1:
        return math.inf
    gap = 1.0 - second_eigenvalue(chain)
    logger.info("计算谱隙", kind=chain.kind.value, n=chain.n, states=chain.num_states, gap=gap)
    return gap


def absolute_spectral_gap(chain: ChainSpec) -> float:
    """绝对谱隙 1 − max(λ₁, |λ_min|)"""
    if chain.num_states == 1:
        return math.inf
    lambda_star = max(second_eigenvalue(chain), abs(smallest_eigenvalue(chain)))
    return 1.0 - lambda_star


# ============================================
# 全变差混合曲线
# ============================================

@dataclass(frozen=True, eq=False)
class MixingCurve:
    """从固定起点出发的全变差曲线

    Attributes:
        start: 起点下标
        t: 时间步 0..T
        tv: Δ_x0(t)
    """
    start: int
    t: np.ndarray
    tv: np.ndarray

    def mixing_time(self, eps: float) -> Optional[int]:
        """τ_x0(ε)：此后所有 Δ ≤ ε 的最小 t；曲线内未达到时返回 None"""
        above = np.nonzero(self.tv > eps)[0]
        if above.size == 0:
            return 0
        last = int(above[-1])
        if last + 1 >= self.t.size:
            return None
        return int(self.t[last + 1])

    def is_monotone(self, tol: Optional[float] = None) -> bool:
        tol = get_tolerance("tv_monotone") if tol is None else tol
        return is_non_increasing(self.tv, tol)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.t, "tv": self.tv})


def tv_distance(mu: np.ndarray, pi: np.ndarray) -> float:
    """½‖μ − π‖₁"""
    return 0.5 * float(np.abs(mu - pi).sum())


def _start_index(chain: ChainSpec, start: Any) -> int:
    if isinstance(start, (int, np.integer)):
        index = int(start)
        if not 0 <= index < chain.num_states:
            raise UsageError("起点下标越界", start=index, states=chain.num_states)
        return index
    try:
        return chain.index_of(start)
    except (KeyError, ValueError) as e:
        raise UsageError("起点不在链的状态空间中", start=str(start)) from e


def tv_mixing_curve(
    chain: ChainSpec,
    start: Any = 0,
    *,
    t_max: Optional[int] = None,
    stop_at: float = 0.0,
) -> MixingCurve:
    """精确演化 μ_{t+1} = μ_t P，记录 Δ_x0(t)

    Args:
        chain: 马尔可夫链
        start: 起点（下标或状态）
        t_max: 最大步数，默认 caps.tv_steps
        stop_at: Δ ≤ stop_at 时提前停止

    Raises:
        CapExceededError: 状态数超过 caps.tv_states
    """
    limit = get_cap("tv_states")
    if chain.num_states > limit:
        raise CapExceededError("tv_states", chain.num_states, limit)
    t_max = get_cap("tv_steps") if t_max is None else t_max

    index = _start_index(chain, start)
    mu = np.zeros(chain.num_states)
    mu[index] = 1.0
    transpose = chain.P.T.tocsr()

    values = [tv_distance(mu, chain.pi)]
    while len(values) <= t_max and values[-1] > stop_at:
        mu = transpose @ mu
        values.append(tv_distance(mu, chain.pi))

    curve = MixingCurve(index, np.arange(len(values)), np.asarray(values))
    logger.info(
        "全变差曲线", kind=chain.kind.value, n=chain.n, start=index, steps=len(values) - 1
    )
    return curve


def worst_start(chain: ChainSpec) -> int:
    """π 最小的状态（上界 log(1/(π(x)ε)) 最大的起点）"""
    return int(np.argmin(chain.pi))


# ============================================
# 混合时间界
# ============================================

@dataclass(frozen=True)
class MixingBounds:
    """混合时间的测量值与谱界

    upper_bound 使用 λ₁；upper_bound_abs 使用 λ* = max(λ₁, |λ_min|)，
    对非懒惰链只有后者是严格上界，holds 以它判定。
    """
    eps: float
    start: int
    tau_measured: Optional[int]
    lambda1: float
    lambda_star: float
    upper_bound: float
    upper_bound_abs: float
    lower_bound: float
    upper_holds: bool
    lower_holds: Optional[bool]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _upper(lam: float, pi_x: float, eps: float) -> float:
    if lam >= 1.0:
        return math.inf
    return math.log(1.0 / (pi_x * eps)) / (1.0 - lam)


def _lower(lam: float, eps: float) -> float:
    if lam <= 0.0:
        return 0.0
    if lam >= 1.0:
        return math.inf
    return lam / (2.0 * (1.0 - lam)) * math.log(1.0 / (2.0 * eps))


def mixing_time_bounds(
    chain: ChainSpec,
    start: Any = None,
    eps: float = 0.25,
    *,
    curve: Optional[MixingCurve] = None,
    worst_case_tau: Optional[int] = None,
) -> MixingBounds:
    """比较测量的 τ_x(ε) 与谱界

    下界针对最坏起点的 τ(ε)；只有给出 worst_case_tau 时才判定。

    Raises:
        UsageError: ε 不在 (0, 1/2) 内
    """
    if not 0 < eps < 0.5:
        raise UsageError("ε 必须在 (0, 1/2) 内", eps=eps)
    index = worst_start(chain) if start is None else _start_index(chain, start)
    if curve is None or curve.start != index:
        curve = tv_mixing_curve(chain, index, stop_at=eps)
    tau = curve.mixing_time(eps)

    lambda1 = second_eigenvalue(chain)
    lambda_star = max(lambda1, abs(smallest_eigenvalue(chain)))
    pi_x = float(chain.pi[index])
    upper = _upper(lambda1, pi_x, eps)
    upper_abs = _upper(lambda_star, pi_x, eps)
    lower = _lower(lambda1, eps)

    return MixingBounds(
        eps=eps,
        start=index,
        tau_measured=tau,
        lambda1=lambda1,
        lambda_star=lambda_star,
        upper_bound=upper,
        upper_bound_abs=upper_abs,
        lower_bound=lower,
        upper_holds=tau is not None and tau <= upper_abs,
        lower_holds=None if worst_case_tau is None else worst_case_tau >= lower,
    )


def worst_case_mixing_time(chain: ChainSpec, eps: float, t_max: Optional[int] = None) -> Optional[int]:
    """τ(ε) = max_x τ_x(ε)，全部起点同时演化（稠密，仅限小链）"""
    limit = int(get_section("solver").get("dense_threshold", 2000))
    if chain.num_states > limit:
        raise CapExceededError("dense_threshold", chain.num_states, limit)
    t_max = get_cap("tv_steps") if t_max is None else t_max

    dist = np.eye(chain.num_states)
    transpose = chain.P.T.tocsr()
    t = 0
    while 0.5 * np.abs(dist - chain.pi[:, None]).sum(axis=0).max() > eps:
        if t >= t_max:
            return None
        dist = transpose @ dist
        t += 1
    return t


# ============================================
# 标度与隐含常数
# ============================================

@dataclass(frozen=True)
class RelaxationScaling:
    """弛豫时间标度"""
    n: list[int]
    relaxation: list[float]
    ratio_to_reference: list[float]
    fit: LogLogFit


def relaxation_scaling(ns: Sequence[int], gaps: Sequence[float]) -> RelaxationScaling:
    """t_rel = 1/gap 相对 n³ log n 的比值与 log-log 拟合"""
    ns = [int(n) for n in ns]
    relaxation = [1.0 / g for g in gaps]
    reference = [n**3 * math.log(n) if n > 1 else 1.0 for n in ns]
    ratios = [r / ref for r, ref in zip(relaxation, reference)]
    return RelaxationScaling(ns, relaxation, ratios, fit_loglog(ns, relaxation))


def fredkin_gap_constant(gap: float, n: int, colors: int, min_transition: float) -> float:
    """由 gap ≥ s·min P/(c·n^{15/2}) 反推的常数 c"""
    return colors * min_transition / (gap * n**7.5)


def peak_displacing_gap_bound(n: int, colors: int) -> float:
    """峰位移链谱隙下界 s/(√π n^{11/2})"""
    return colors / (math.sqrt(math.pi) * n**5.5)
