# Fredkin Lab - 自旋基
"""
自旋基：站点串 ↔ 整数码的双射

全空间基的码就是 0..d^L−1；扇区基只保存升序的子集码。
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from combinatorics.enumeration import check_code_range, decode_codes
from combinatorics.words import Alphabet, format_tokens
from common.errors import CapExceededError


@dataclass(frozen=True, eq=False)
class SpinBasis:
    """自旋基

    Attributes:
        alphabet: 局部符号表（d = alphabet.size）
        length: 站点数
        codes: 升序 int64 码
        label: full / balanced / motzkin / defect ...
    """
    alphabet: Alphabet
    length: int
    codes: np.ndarray
    label: str = "full"

    @classmethod
    def full(cls, alphabet: Alphabet, length: int, max_dim: Optional[int] = None) -> "SpinBasis":
        """d^L 个全部站点串"""
        check_code_range(alphabet.size, length)
        dim = alphabet.size**length
        if max_dim is not None and dim > max_dim:
            raise CapExceededError("spin_dimension", dim, max_dim)
        return cls(alphabet, length, np.arange(dim, dtype=np.int64), "full")

    @property
    def dim(self) -> int:
        return int(self.codes.size)

    @property
    def local_dim(self) -> int:
        return self.alphabet.size

    def index_of(self, code: int) -> int:
        pos = int(np.searchsorted(self.codes, code))
        if pos >= self.dim or int(self.codes[pos]) != code:
            raise KeyError(code)
        return pos

    def lookup(self, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """批量查找，返回 (下标, 是否命中)"""
        pos = np.searchsorted(self.codes, codes)
        clipped = np.minimum(pos, self.dim - 1)
        return clipped, self.codes[clipped] == codes

    def encode(self, tokens: Sequence[str]) -> int:
        return self.alphabet.pattern_value(tokens)

    def index_of_tokens(self, tokens: Sequence[str]) -> int:
        return self.index_of(self.encode(tokens))

    def tokens(self, i: int) -> tuple[str, ...]:
        return self.alphabet.decode(int(self.codes[i]), self.length)

    def format(self, i: int) -> str:
        return format_tokens(self.tokens(i), self.alphabet.colors)

    def symbols(self) -> np.ndarray:
        """(dim, L) 符号矩阵"""
        return decode_codes(self.codes, self.length, self.alphabet.size)

    def restrict(self, indices: np.ndarray, label: str) -> "SpinBasis":
        return SpinBasis(self.alphabet, self.length, self.codes[np.sort(indices)], label)
