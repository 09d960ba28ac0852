# Fredkin Lab - 局部移动
"""
Fredkin 局部移动、峰位移链转移分布、规范路径

- 交换: uud↔udu（峰与上步交换）、udd↔dud（峰与下步交换），每个三元窗口至多一种
- 重新着色: 将一个峰整体改为另一种颜色
- 峰位移: 在 1..2n−1 中选切点，若为峰则剪下并以随机颜色插入 0..2n−2 的任意位置；否则空转
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from combinatorics.words import Direction, PathWord, Step, format_word
from common.errors import NotAdjacentError


class MoveKind(str, Enum):
    """移动类型"""
    EXCHANGE_UP = "exchange_up"      # uud ↔ udu
    EXCHANGE_DOWN = "exchange_down"  # udd ↔ dud
    RECOLOR = "recolor"


@dataclass(frozen=True)
class MoveDescriptor:
    """移动描述

    Attributes:
        kind: 移动类型
        site: 交换为三元窗口首站点；重新着色为峰首站点（1 起）
        detail: 模式说明，如 "uud->udu" 或 "1->2"
    """
    kind: MoveKind
    site: int
    detail: str


# 模式 → (类型, 新顺序, 峰在窗口内的偏移, 目标模式)
_EXCHANGES: dict[str, tuple[MoveKind, tuple[int, int, int], int, str]] = {
    "uud": (MoveKind.EXCHANGE_UP, (1, 2, 0), 1, "udu"),
    "udu": (MoveKind.EXCHANGE_UP, (2, 0, 1), 0, "uud"),
    "udd": (MoveKind.EXCHANGE_DOWN, (2, 0, 1), 0, "dud"),
    "dud": (MoveKind.EXCHANGE_DOWN, (1, 2, 0), 1, "udd"),
}


def _directions(steps: Sequence[Step]) -> str:
    return "".join(step.direction.value for step in steps)


def exchange_at(steps: Sequence[Step], site: int) -> Optional[tuple[tuple[Step, ...], MoveKind, str]]:
    """在窗口 site..site+2 执行交换

    Returns:
        (新步序列, 移动类型, 模式)；窗口不匹配任何交换模式时返回 None
    """
    window = steps[site - 1 : site + 2]
    pattern = _directions(window)
    entry = _EXCHANGES.get(pattern)
    if entry is None:
        return None
    kind, order, offset, target = entry
    if window[offset].color != window[offset + 1].color:
        return None
    new = tuple(steps[: site - 1]) + tuple(window[k] for k in order) + tuple(steps[site + 2 :])
    return new, kind, f"{pattern}->{target}"


def peak_in_window(steps: Sequence[Step], site: int) -> Optional[int]:
    """窗口 site..site+2 内用于重新着色的峰首站点（优先 (site, site+1)）"""
    for start in (site, site + 1):
        if start + 1 <= len(steps) and (
            steps[start - 1].direction is Direction.UP
            and steps[start].direction is Direction.DOWN
            and steps[start - 1].color == steps[start].color
        ):
            return start
    return None


def recolor_peak(steps: Sequence[Step], start: int, color: int) -> tuple[Step, ...]:
    """把首站点为 start 的峰改为 color"""
    new = list(steps)
    new[start - 1] = Step(Direction.UP, color)
    new[start] = Step(Direction.DOWN, color)
    return tuple(new)


def fredkin_neighbors(word: PathWord, colors: int) -> list[tuple[PathWord, MoveDescriptor]]:
    """一步 Fredkin 移动可达的全部路径字

    同一目标可能由多个窗口到达，此时每个窗口各列一次。
    """
    steps = word.steps
    results: list[tuple[PathWord, MoveDescriptor]] = []

    for site in range(1, len(steps) - 1):
        moved = exchange_at(steps, site)
        if moved is not None:
            new, kind, detail = moved
            results.append((word.replace(new), MoveDescriptor(kind, site, detail)))

    for start in range(1, len(steps)):
        if peak_in_window(steps, start) != start:
            continue
        current = steps[start - 1].color
        for color in range(1, colors + 1):
            if color != current:
                results.append(
                    (
                        word.replace(recolor_peak(steps, start, color)),
                        MoveDescriptor(MoveKind.RECOLOR, start, f"{current}->{color}"),
                    )
                )
    return results


# ============================================
# 峰位移链
# ============================================

@dataclass(frozen=True)
class Displacement:
    """一次峰位移的实现 (切点, 插入位置, 颜色)"""
    cut: int       # 峰首站点，1 起
    insert: int    # 剪下后的插入位置 0..L-2
    color: int
    peak_color: int
    result: tuple[Step, ...]

    @property
    def walk_length(self) -> int:
        """沿 Fredkin 移动实现该位移所需步数"""
        return abs(self.cut - 1 - self.insert) + (self.color != self.peak_color)


def displacements(word: PathWord, colors: int) -> Iterator[Displacement]:
    """枚举所有 (切点为峰) 的位移实现"""
    steps = word.steps
    length = len(steps)
    for cut in range(1, length):
        if peak_in_window(steps, cut) != cut:
            continue
        peak_color = steps[cut - 1].color
        rest = steps[: cut - 1] + steps[cut + 1 :]
        for insert in range(length - 1):
            for color in range(1, colors + 1):
                peak = (Step(Direction.UP, color), Step(Direction.DOWN, color))
                yield Displacement(
                    cut, insert, color, peak_color, rest[:insert] + peak + rest[insert:]
                )


def peak_displace_targets(word: PathWord, colors: int) -> list[tuple[PathWord, Fraction]]:
    """峰位移链从 word 出发的精确转移分布（含空转质量）

    每个 (切点, 插入位置, 颜色) 概率 1/((L−1)^2 s)；切点不是峰时空转。
    """
    length = len(word)
    if length < 2:
        raise ValueError("峰位移链需要 n >= 1")
    total = (length - 1) ** 2 * colors
    counts: Counter[tuple[Step, ...]] = Counter()

    peak_cuts = 0
    for move in displacements(word, colors):
        counts[move.result] += 1
        if move.insert == 0 and move.color == 1:
            peak_cuts += 1
    counts[word.steps] += (length - 1 - peak_cuts) * (length - 1) * colors

    targets = [(word.replace(steps), Fraction(count, total)) for steps, count in counts.items()]
    targets.sort(key=lambda item: item[0].tokens)
    return targets


# ============================================
# 规范路径
# ============================================

def walk_peak(word: PathWord, move: Displacement) -> list[PathWord]:
    """把切下的峰逐步移到插入位置，必要时最后重新着色"""
    current = list(word.steps)
    position = move.cut - 1
    path = [word]
    while position < move.insert:
        current[position : position + 3] = [
            current[position + 2],
            current[position],
            current[position + 1],
        ]
        position += 1
        path.append(word.replace(current))
    while position > move.insert:
        current[position - 1 : position + 2] = [
            current[position],
            current[position + 1],
            current[position - 1],
        ]
        position -= 1
        path.append(word.replace(current))
    if move.color != move.peak_color:
        path.append(word.replace(recolor_peak(current, position + 1, move.color)))
    return path


def canonical_paths_from(word: PathWord, colors: int) -> dict[PathWord, list[PathWord]]:
    """word 到其全部峰位移邻居的规范路径

    同一邻居有多种实现时取步数最少者，平局按 (切点, 插入位置, 颜色) 字典序。
    """
    best: dict[tuple[Step, ...], Displacement] = {}
    for move in displacements(word, colors):
        if move.result == word.steps:
            continue
        current = best.get(move.result)
        key = (move.walk_length, move.cut, move.insert, move.color)
        if current is None or key < (
            current.walk_length,
            current.cut,
            current.insert,
            current.color,
        ):
            best[move.result] = move
    return {word.replace(steps): walk_peak(word, move) for steps, move in best.items()}


def canonical_path(x: PathWord, y: PathWord, colors: Optional[int] = None) -> list[PathWord]:
    """x 到 y 的规范路径（相邻状态均为 Fredkin 移动）

    Raises:
        NotAdjacentError: x, y 在峰位移链下不相邻
    """
    if x == y:
        return [x]
    if colors is None:
        colors = max(x.max_color, y.max_color)
    path = canonical_paths_from(x, colors).get(y)
    if path is None:
        raise NotAdjacentError(
            "两个路径在峰位移链下不相邻", x=format_word(x, colors), y=format_word(y, colors)
        )
    return path
