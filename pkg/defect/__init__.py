# Fredkin Lab - 缺陷模块
"""
Defect 模块

包含:
- hopping: 有效跳跃哈密顿量、解析零能态、映射随机游走、钉扎振幅
- single_defect: 单缺陷扇区 H_ε^x 与一阶微扰检查
"""

from defect.hopping import (
    HeffConvention,
    HoppingSpec,
    PinnedAmplitude,
    Sublattice,
    WalkBounds,
    analytic_ground_state,
    build_heff,
    ground_weights,
    heff_decay_fit,
    heff_ground_energy,
    hmove_residual,
    kernel_identity_exact,
    mapped_walk,
    pinned_amplitude,
    walk_bounds,
)
from defect.single_defect import (
    DefectBasis,
    FirstOrderCheck,
    build_single_defect,
    defect_basis,
    defect_dimension,
    defect_terms,
    first_order_check,
    zero_mode_count,
)

__all__ = [
    "HeffConvention",
    "Sublattice",
    "HoppingSpec",
    "build_heff",
    "ground_weights",
    "analytic_ground_state",
    "kernel_identity_exact",
    "hmove_residual",
    "mapped_walk",
    "WalkBounds",
    "walk_bounds",
    "heff_ground_energy",
    "heff_decay_fit",
    "PinnedAmplitude",
    "pinned_amplitude",
    "DefectBasis",
    "defect_basis",
    "defect_dimension",
    "defect_terms",
    "build_single_defect",
    "zero_mode_count",
    "FirstOrderCheck",
    "first_order_check",
]
