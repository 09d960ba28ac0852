# Fredkin Lab - 马尔可夫模块
"""
Markov 模块

包含:
- chain: ChainSpec 与链公理检查
- builders: Fredkin / 峰位移 / 格路 / 正格路链的构造
- analysis: 谱隙、全变差曲线与混合时间界
- paths: 规范路径、比较常数 A、拥塞 ρ
- induced: 子集上的诱导链
"""

from markov.analysis import (
    MixingBounds,
    MixingCurve,
    RelaxationScaling,
    absolute_spectral_gap,
    fredkin_gap_constant,
    mixing_time_bounds,
    peak_displacing_gap_bound,
    relaxation_scaling,
    second_eigenvalue,
    spectral_gap,
    tv_distance,
    tv_mixing_curve,
    worst_case_mixing_time,
    worst_start,
)
from markov.builders import DEFAULT_MOVE_PROB, build_chain
from markov.chain import ChainDiagnostics, ChainKind, ChainSpec, chain_diagnostics, validate_chain
from markov.induced import InducedMode, induced_chain
from markov.paths import (
    CanonicalPathSet,
    ComparisonResult,
    CongestionResult,
    bfs_paths,
    comparison_constant,
    congestion_rho,
    identity_paths,
    interval_paths,
    max_stationary_ratio,
    walk_the_peak_paths,
)

__all__ = [
    "ChainKind",
    "ChainSpec",
    "ChainDiagnostics",
    "chain_diagnostics",
    "validate_chain",
    "DEFAULT_MOVE_PROB",
    "build_chain",
    "spectral_gap",
    "absolute_spectral_gap",
    "second_eigenvalue",
    "MixingCurve",
    "MixingBounds",
    "tv_distance",
    "tv_mixing_curve",
    "mixing_time_bounds",
    "worst_case_mixing_time",
    "worst_start",
    "RelaxationScaling",
    "relaxation_scaling",
    "fredkin_gap_constant",
    "peak_displacing_gap_bound",
    "CanonicalPathSet",
    "ComparisonResult",
    "CongestionResult",
    "walk_the_peak_paths",
    "identity_paths",
    "interval_paths",
    "bfs_paths",
    "comparison_constant",
    "congestion_rho",
    "max_stationary_ratio",
    "InducedMode",
    "induced_chain",
]
