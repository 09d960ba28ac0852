# Fredkin Lab - 偏移面积模块
"""
Excursion 模块

包含:
- density: Airy 分布密度 f_A、矩与特征函数
- areas: Dyck 面积闭式核对与缩放面积 Monte Carlo
- twisted: 扭曲试探态的能量与基态重叠
"""

from excursion.areas import (
    AREA_SCALE,
    AreaHistogram,
    area_table,
    dyck_area_closed_form,
    enumerated_area_sum,
    exact_scaled_mean,
    mc_scaled_area,
    scaled_area,
)
from excursion.density import (
    ExcursionDensity,
    airy_zeros,
    char_function,
    default_density,
    density_f_A,
    density_grid,
    excursion_moments,
    write_density_csv,
)
from excursion.twisted import (
    SCALING_SLOPE_TARGET,
    TwistedEnergy,
    TwistedScaling,
    TwistedState,
    VariationalCheck,
    default_theta,
    exchange_pair_counts,
    overlap_with_ground,
    twisted_energy,
    twisted_scaling,
    twisted_state,
    variational_check,
)

__all__ = [
    "AREA_SCALE",
    "SCALING_SLOPE_TARGET",
    "AreaHistogram",
    "ExcursionDensity",
    "TwistedEnergy",
    "TwistedScaling",
    "TwistedState",
    "VariationalCheck",
    "airy_zeros",
    "area_table",
    "char_function",
    "default_density",
    "default_theta",
    "density_f_A",
    "density_grid",
    "dyck_area_closed_form",
    "enumerated_area_sum",
    "exact_scaled_mean",
    "exchange_pair_counts",
    "excursion_moments",
    "mc_scaled_area",
    "overlap_with_ground",
    "scaled_area",
    "twisted_energy",
    "twisted_scaling",
    "twisted_state",
    "variational_check",
]
