# Fredkin Lab - 路径枚举
"""
向量化路径枚举

路径以整数码表示: 站点 1 为最高位的 d 进制数，d 为字母表大小。
按码排序即按序列化文本的字典序排序。
逐层扩展前缀，用 numpy 数组同时跟踪高度与颜色栈（s 进制整数）。
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Iterator, Optional, overload

import numpy as np
import structlog

from combinatorics.counting import dyck_count, lattice_count, motzkin_count
from combinatorics.words import Alphabet, PathKind, PathWord, alphabet_for, step_from_token
from common.errors import CapExceededError, InvalidPathError, InvariantViolation
from configs.settings import get_cap
from storage.cache import get_enumeration_cache

logger = structlog.get_logger()

_INT64_LIMIT = 2**63


def path_count(length: int, colors: int, kind: PathKind | str) -> int:
    """路径总数（不枚举）"""
    kind = PathKind(kind)
    if kind is PathKind.DYCK:
        return dyck_count(length, colors)
    if kind is PathKind.MOTZKIN:
        return motzkin_count(length, colors)
    return lattice_count(length)


def check_code_range(size: int, length: int) -> None:
    """确认 size^length 能放进 int64"""
    if size**length >= _INT64_LIMIT:
        raise CapExceededError("int64_code_range", size**length, _INT64_LIMIT - 1)


def enumerate_codes(
    length: int,
    colors: int,
    kind: PathKind | str,
    *,
    max_count: Optional[int] = None,
    use_cache: bool = True,
) -> np.ndarray:
    """枚举全部路径码（升序）

    Args:
        length: 路径长度 L
        colors: 颜色数 s
        kind: 路径类型
        max_count: 路径数上限，超过即抛 CapExceededError
        use_cache: 是否使用 FREDKIN_LAB_CACHE 缓存

    Returns:
        int64 升序码数组
    """
    kind = PathKind(kind)
    if length < 0:
        raise InvalidPathError("路径长度不能为负", length=length)
    alphabet = alphabet_for(kind, colors)
    check_code_range(alphabet.size, length)

    expected = path_count(length, colors, kind)
    if max_count is not None and expected > max_count:
        raise CapExceededError("path_count", expected, max_count)

    cache = get_enumeration_cache() if use_cache else None
    if cache is not None:
        cached = cache.load(kind.value, length, colors)
        if cached is not None:
            return cached

    size = alphabet.size
    codes = np.zeros(1, dtype=np.int64)
    height = np.zeros(1, dtype=np.int64)
    stack = np.zeros(1, dtype=np.int64)

    for position in range(length):
        remaining = length - position - 1
        next_codes, next_height, next_stack = [], [], []

        for symbol, (direction, color) in enumerate(
            zip(alphabet.directions, alphabet.symbol_colors)
        ):
            if direction == "u":
                new_height = height + 1
                mask = new_height <= remaining
                new_stack = stack * colors + (color - 1)
            elif direction == "d":
                new_height = height - 1
                if kind is PathKind.LATTICE:
                    mask = new_height >= -remaining
                    new_stack = stack
                else:
                    mask = (height >= 1) & (stack % colors == color - 1)
                    new_stack = stack // colors
            else:
                new_height = height
                mask = height <= remaining
                new_stack = stack

            next_codes.append(codes[mask] * size + symbol)
            next_height.append(new_height[mask])
            next_stack.append(new_stack[mask])

        codes = np.concatenate(next_codes)
        height = np.concatenate(next_height)
        stack = np.concatenate(next_stack)

    codes = np.sort(codes)
    if codes.size != expected:
        raise InvariantViolation("枚举数与计数公式不符", enumerated=codes.size, expected=expected)

    logger.debug("枚举路径", kind=kind.value, length=length, colors=colors, count=codes.size)

    if cache is not None:
        cache.save(kind.value, length, colors, codes)
    return codes


def decode_codes(codes: np.ndarray, length: int, size: int) -> np.ndarray:
    """码数组 → 符号矩阵 (N, L)，int8"""
    symbols = np.empty((codes.size, length), dtype=np.int8)
    rest = np.array(codes, dtype=np.int64, copy=True)
    for position in range(length - 1, -1, -1):
        symbols[:, position] = rest % size
        rest //= size
    return symbols


def recode(codes: np.ndarray, length: int, from_size: int, to_size: int) -> np.ndarray:
    """符号不变，改变进制"""
    check_code_range(to_size, length)
    symbols = decode_codes(codes, length, from_size)
    out = np.zeros(codes.size, dtype=np.int64)
    for position in range(length):
        out = out * to_size + symbols[:, position]
    return out


def window_values(codes: np.ndarray, length: int, size: int, site: int, width: int) -> np.ndarray:
    """站点 site..site+width-1（1 起）构成的窗口值"""
    shift = size ** (length - (site - 1) - width)
    return (codes // shift) % size**width


def areas_from_codes(codes: np.ndarray, length: int, alphabet: Alphabet) -> np.ndarray:
    """批量面积 Σ y_i

    第 i 步（0 起）的增量计入 y_{i+1}..y_L，权重 L − i。
    """
    deltas = np.asarray(alphabet.deltas, dtype=np.int64)
    total = np.zeros(codes.size, dtype=np.int64)
    rest = np.array(codes, dtype=np.int64, copy=True)
    for position in range(length - 1, -1, -1):
        total += deltas[rest % alphabet.size] * (length - position)
        rest //= alphabet.size
    return total


@dataclass(frozen=True, eq=False)
class WordTable(Sequence[PathWord]):
    """码数组支撑的路径字序列（按需解码）"""
    codes: np.ndarray
    length: int
    alphabet: Alphabet
    kind: PathKind

    def __len__(self) -> int:
        return int(self.codes.size)

    @overload
    def __getitem__(self, i: int) -> PathWord: ...

    @overload
    def __getitem__(self, i: slice) -> list[PathWord]: ...

    def __getitem__(self, i: int | slice) -> PathWord | list[PathWord]:
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(len(self)))]
        tokens = self.alphabet.decode(int(self.codes[i]), self.length)
        return PathWord(tuple(step_from_token(t) for t in tokens), self.kind)

    def __iter__(self) -> Iterator[PathWord]:
        for i in range(len(self)):
            yield self[i]

    def index(self, word: PathWord, start: int = 0, stop: Optional[int] = None) -> int:
        """路径字 → 下标（二分查找）"""
        code = self.alphabet.encode(word.steps)
        pos = int(np.searchsorted(self.codes, code))
        if pos >= len(self) or int(self.codes[pos]) != code or len(word) != self.length:
            raise ValueError(f"{word} 不在表中")
        return pos

    def __contains__(self, word: object) -> bool:
        if not isinstance(word, PathWord):
            return False
        try:
            self.index(word)
        except (ValueError, InvalidPathError):
            return False
        return True


def word_table(length: int, colors: int, kind: PathKind | str, **kwargs: int) -> WordTable:
    """枚举并包装为 WordTable"""
    kind = PathKind(kind)
    codes = enumerate_codes(length, colors, kind, **kwargs)
    return WordTable(codes, length, alphabet_for(kind, colors), kind)


def enumerate_paths(
    length: int,
    colors: int,
    kind: PathKind | str,
    *,
    max_length: Optional[int] = None,
) -> list[PathWord]:
    """枚举全部路径字（去重、字典序）

    Args:
        length: 路径长度 L
        colors: 颜色数 s
        kind: dyck / motzkin / lattice
        max_length: 长度上限，默认取 caps.path_length

    Raises:
        CapExceededError: L 超过上限
    """
    kind = PathKind(kind)
    limit = max_length if max_length is not None else get_cap("path_length")
    if length > limit:
        raise CapExceededError("path_length", length, limit)
    if kind is not PathKind.MOTZKIN and length % 2:
        raise InvalidPathError("Dyck/格路径长度必须为偶数", length=length)
    return list(word_table(length, colors, kind))
