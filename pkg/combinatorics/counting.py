# Fredkin Lab - 计数
"""
Catalan / Motzkin 计数与 Dyck 面积闭式

全部使用 Python 大整数，结果精确。
"""

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """第 n 个 Catalan 数 C_n"""
    if n < 0:
        raise ValueError(f"catalan 需要 n >= 0，收到 {n}")
    return comb(2 * n, n) // (n + 1)


def catalan_convolution(m: int) -> int:
    """Σ_{j=1}^{m} C_{j-1} C_{m-j}（应等于 C_m）"""
    return sum(catalan(j - 1) * catalan(m - j) for j in range(1, m + 1))


def motzkin_count(length: int, colors: int = 1) -> int:
    """s 色 Motzkin 路径数 Σ_k binom(L, 2k) C_k s^k"""
    if length < 0:
        raise ValueError(f"路径长度不能为负: {length}")
    return sum(
        comb(length, 2 * k) * catalan(k) * colors**k for k in range(length // 2 + 1)
    )


def dyck_count(length: int, colors: int = 1) -> int:
    """s 色 Dyck 路径数 s^{L/2} C_{L/2}"""
    if length % 2:
        return 0
    return colors ** (length // 2) * catalan(length // 2)


def lattice_count(length: int) -> int:
    """终点高度为 0 的格路径数 binom(L, L/2)"""
    if length % 2:
        return 0
    return comb(length, length // 2)


def dyck_area_closed_form(n: int) -> int:
    """长度 2n 的全部 Dyck 路径面积之和 A_{2n} = 4^n − binom(2n+2, n+1)/2"""
    if n < 1:
        raise ValueError(f"dyck_area_closed_form 需要 n >= 1，收到 {n}")
    return 4**n - comb(2 * n + 2, n + 1) // 2


def expected_dyck_area(n: int) -> float:
    """均匀 Dyck 路径的期望面积 A_{2n} / C_n"""
    return dyck_area_closed_form(n) / catalan(n)
