# Fredkin Lab - 投影项
"""
局部投影项描述

一个 ProjectorTerm 作用在站点 site..site+width−1 上:
- 单个 ket: 对角投影 c·|a⟩⟨a|
- 两个 ket: c·|ψ⟩⟨ψ|，|ψ⟩ = (|a⟩ − |b⟩)/√2
  对角元 c/2，非对角元 −c/2（因此哈密顿量是 stoquastic 的）
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from combinatorics.words import Alphabet


class TermKind(str, Enum):
    """投影项类型"""
    UP_EXCHANGE = "U"
    DOWN_EXCHANGE = "D"
    RECOLOR = "phi"
    CROSS = "cross"
    BOUNDARY = "boundary"
    DEFECT_HOP = "theta_x"
    DEFECT_PIN = "pin_x"


@dataclass(frozen=True)
class ProjectorTerm:
    """局部投影项

    Attributes:
        kind: 类型
        site: 起始站点（1 起）
        kets: 一个或两个等宽的 token 模式
        coefficient: 系数
    """
    kind: TermKind
    site: int
    kets: tuple[tuple[str, ...], ...]
    coefficient: float = 1.0

    def __post_init__(self) -> None:
        if len(self.kets) not in (1, 2):
            raise ValueError("投影项需要一个或两个 ket")
        if len({len(k) for k in self.kets}) != 1:
            raise ValueError("ket 宽度不一致")
        if len(self.kets) == 2 and self.kets[0] == self.kets[1]:
            raise ValueError("两个 ket 相同，投影为零")

    @property
    def width(self) -> int:
        return len(self.kets[0])

    def local_entries(self, alphabet: Alphabet) -> list[tuple[int, int, float]]:
        """局部模式空间中的 (源, 目标, 矩阵元)"""
        values = [alphabet.pattern_value(k) for k in self.kets]
        c = self.coefficient
        if len(values) == 1:
            return [(values[0], values[0], c)]
        a, b = values
        half = 0.5 * c
        return [(a, a, half), (b, b, half), (a, b, -half), (b, a, -half)]

    def local_matrix(self, alphabet: Alphabet) -> np.ndarray:
        """d^w × d^w 稠密局部矩阵"""
        size = alphabet.size**self.width
        local = np.zeros((size, size))
        for source, target, value in self.local_entries(alphabet):
            local[source, target] += value
        return local

    def describe(self) -> str:
        kets = " - ".join(" ".join(k) for k in self.kets)
        return f"{self.kind.value}@{self.site}[{kets}]"


# ============================================
# 模型的项列表
# ============================================

def _u(k: int) -> str:
    return f"u{k}"


def _d(k: int) -> str:
    return f"d{k}"


def exchange_terms(length: int, colors: int, coefficient: float = 1.0) -> list[ProjectorTerm]:
    """三站点交换项 U^{k1,k2} 与 D^{k1,k2}，窗口 1..L−2"""
    terms = []
    for site in range(1, length - 1):
        for k1 in range(1, colors + 1):
            for k2 in range(1, colors + 1):
                terms.append(ProjectorTerm(
                    TermKind.UP_EXCHANGE, site,
                    ((_u(k1), _u(k2), _d(k2)), (_u(k2), _d(k2), _u(k1))),
                    coefficient,
                ))
                terms.append(ProjectorTerm(
                    TermKind.DOWN_EXCHANGE, site,
                    ((_d(k1), _u(k2), _d(k2)), (_u(k2), _d(k2), _d(k1))),
                    coefficient,
                ))
    return terms


def recolor_terms(length: int, colors: int, coefficient: float = 1.0) -> list[ProjectorTerm]:
    """峰重新着色 φ^{k1,k2}（k1 < k2），作用在全部相邻站点对"""
    terms = []
    for site in range(1, length):
        for k1 in range(1, colors + 1):
            for k2 in range(k1 + 1, colors + 1):
                terms.append(ProjectorTerm(
                    TermKind.RECOLOR, site, ((_u(k1), _d(k1)), (_u(k2), _d(k2))), coefficient
                ))
    return terms


def cross_terms(length: int, colors: int) -> list[ProjectorTerm]:
    """颜色错配 |u^{k1} d^{k2}⟩（k1 ≠ k2）"""
    return [
        ProjectorTerm(TermKind.CROSS, site, ((_u(k1), _d(k2)),))
        for site in range(1, length)
        for k1 in range(1, colors + 1)
        for k2 in range(1, colors + 1)
        if k1 != k2
    ]


def boundary_terms(length: int, colors: int) -> list[ProjectorTerm]:
    """站点 1 的下步与站点 L 的上步"""
    terms = [ProjectorTerm(TermKind.BOUNDARY, 1, ((_d(k),),)) for k in range(1, colors + 1)]
    terms += [ProjectorTerm(TermKind.BOUNDARY, length, ((_u(k),),)) for k in range(1, colors + 1)]
    return terms


def fredkin_terms(n: int, colors: int) -> list[ProjectorTerm]:
    """Fredkin 链 2n 站点的全部项"""
    length = 2 * n
    return (
        exchange_terms(length, colors)
        + recolor_terms(length, colors)
        + cross_terms(length, colors)
        + boundary_terms(length, colors)
    )


def motzkin_terms(n: int, colors: int) -> list[ProjectorTerm]:
    """Motzkin 链 2n 站点的全部项：0u↔u0、0d↔d0、00↔ud"""
    length = 2 * n
    terms = []
    for site in range(1, length):
        for k in range(1, colors + 1):
            terms.append(ProjectorTerm(TermKind.UP_EXCHANGE, site, (("0", _u(k)), (_u(k), "0"))))
            terms.append(ProjectorTerm(TermKind.DOWN_EXCHANGE, site, (("0", _d(k)), (_d(k), "0"))))
            terms.append(ProjectorTerm(TermKind.RECOLOR, site, (("0", "0"), (_u(k), _d(k)))))
    return terms + cross_terms(length, colors) + boundary_terms(length, colors)
