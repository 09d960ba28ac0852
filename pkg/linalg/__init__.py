# Fredkin Lab - 线性代数模块
"""
Linalg 模块

包含:
- sparse: SparseSymMatrix、matvec、quadratic_form
- eigen: Spectrum、extreme_eigs（稠密 / Lanczos）
"""

from linalg.eigen import Method, Spectrum, Which, extreme_eigs
from linalg.sparse import SparseSymMatrix, matvec, quadratic_form

__all__ = [
    "Method",
    "SparseSymMatrix",
    "Spectrum",
    "Which",
    "extreme_eigs",
    "matvec",
    "quadratic_form",
]
