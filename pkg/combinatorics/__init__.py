# Fredkin Lab - 组合模块
"""
Combinatorics 模块

包含:
- words: Step / PathWord / HeightProfile 与字母表
- counting: Catalan、Motzkin 计数与 Dyck 面积闭式
- enumeration: 向量化枚举
- moves: Fredkin 移动、峰位移分布、规范路径
- sampling: 循环引理均匀采样
"""

from combinatorics.counting import (
    catalan,
    catalan_convolution,
    dyck_area_closed_form,
    dyck_count,
    expected_dyck_area,
    lattice_count,
    motzkin_count,
)
from combinatorics.enumeration import (
    WordTable,
    areas_from_codes,
    decode_codes,
    enumerate_codes,
    enumerate_paths,
    path_count,
    window_values,
    word_table,
)
from combinatorics.moves import (
    MoveDescriptor,
    MoveKind,
    canonical_path,
    canonical_paths_from,
    fredkin_neighbors,
    peak_displace_targets,
)
from combinatorics.sampling import sample_dyck_areas, sample_dyck_uniform
from combinatorics.words import (
    Alphabet,
    Direction,
    HeightProfile,
    PathKind,
    PathWord,
    Step,
    alphabet_for,
    area,
    format_word,
    height_profile,
    matching,
    parse_word,
    peaks,
)

__all__ = [
    "Alphabet",
    "Direction",
    "HeightProfile",
    "PathKind",
    "PathWord",
    "Step",
    "WordTable",
    "MoveDescriptor",
    "MoveKind",
    "alphabet_for",
    "area",
    "areas_from_codes",
    "canonical_path",
    "canonical_paths_from",
    "catalan",
    "catalan_convolution",
    "decode_codes",
    "dyck_area_closed_form",
    "dyck_count",
    "enumerate_codes",
    "enumerate_paths",
    "expected_dyck_area",
    "format_word",
    "fredkin_neighbors",
    "height_profile",
    "lattice_count",
    "matching",
    "motzkin_count",
    "parse_word",
    "path_count",
    "peak_displace_targets",
    "peaks",
    "sample_dyck_areas",
    "sample_dyck_uniform",
    "window_values",
    "word_table",
]
