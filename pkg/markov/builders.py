# Fredkin Lab - 链构造
"""
四类路径链与映射链的构造

- fredkin: 均匀选窗口 j ∈ 1..2n−2，再均匀选一种提案
  （上交换 uud↔udu、下交换 udd↔dud，s>1 时另有重新着色为 c=1..s），
  合法则以 move_prob 执行，否则空转
- peak_displacing: 峰位移链的精确转移分布
- lattice: 均匀选相邻步 (i, i+1)，ud↔du 以概率 1/2 翻转
- positive_lattice: 同上，但翻转后若出现负高度则空转
- hamiltonian_mapped / hopping_walk: 委托给 hamiltonian / defect 模块
"""

from typing import Optional

import numpy as np
import scipy.sparse as sp
import structlog

from combinatorics.enumeration import path_count, word_table
from combinatorics.moves import (
    MoveKind,
    exchange_at,
    peak_displace_targets,
    peak_in_window,
    recolor_peak,
)
from combinatorics.words import PathKind, is_valid
from common.errors import CapExceededError, UsageError
from configs.settings import get_cap
from markov.chain import ChainKind, ChainSpec, validate_chain

logger = structlog.get_logger()

DEFAULT_MOVE_PROB = 0.5


def build_chain(
    kind: ChainKind | str,
    n: int,
    colors: int = 1,
    move_prob: float = DEFAULT_MOVE_PROB,
    *,
    max_states: Optional[int] = None,
    validate: bool = True,
) -> ChainSpec:
    """构造马尔可夫链

    Args:
        kind: 链类型
        n: 半长度（hopping_walk 时为奇数链长 m）
        colors: 颜色数 s
        move_prob: Fredkin 链的执行概率
        max_states: 状态数上限，默认 caps.chain_states
        validate: 构造后检查链公理

    Raises:
        CapExceededError: 状态数超过上限
    """
    kind = ChainKind(kind)
    limit = max_states if max_states is not None else get_cap("chain_states")

    if kind is ChainKind.HAMILTONIAN_MAPPED:
        from hamiltonian.builder import build_balanced_sector
        from hamiltonian.mapping import to_markov

        return to_markov(build_balanced_sector(n, colors, max_dim=limit))
    if kind is ChainKind.HOPPING_WALK:
        from defect.hopping import mapped_walk

        return mapped_walk(n, colors)

    path_kind = PathKind.LATTICE if kind is ChainKind.LATTICE else PathKind.DYCK
    expected = path_count(2 * n, colors, path_kind)
    if expected > limit:
        raise CapExceededError("chain_states", expected, limit)

    if kind is ChainKind.FREDKIN:
        chain = _fredkin_chain(n, colors, move_prob)
    elif kind is ChainKind.PEAK_DISPLACING:
        chain = _peak_displacing_chain(n, colors)
    else:
        chain = _lattice_chain(n, positive=kind is ChainKind.POSITIVE_LATTICE)

    if validate:
        validate_chain(chain)
    logger.info(
        "构建马尔可夫链", kind=kind.value, n=n, colors=colors, states=chain.num_states
    )
    return chain


def _assemble(states: object, rows: list[int], cols: list[int], values: list[float]) -> sp.csr_matrix:
    """由非对角元构造行随机矩阵，对角补足到行和为 1"""
    size = len(states)  # type: ignore[arg-type]
    off = sp.coo_matrix((values, (rows, cols)), shape=(size, size)).tocsr()
    off.sum_duplicates()
    diag = 1.0 - np.asarray(off.sum(axis=1)).ravel()
    return (off + sp.diags(diag)).tocsr()


def _fredkin_chain(n: int, colors: int, move_prob: float) -> ChainSpec:
    if n < 2:
        raise UsageError("Fredkin 链需要 n >= 2（至少一个三元窗口）", n=n)
    if not 0 < move_prob <= 1:
        raise UsageError("move_prob 必须在 (0, 1] 内", move_prob=move_prob)

    states = word_table(2 * n, colors, PathKind.DYCK)
    windows = 2 * n - 2
    proposals = 2 + (colors if colors > 1 else 0)
    weight = move_prob / (windows * proposals)

    rows: list[int] = []
    cols: list[int] = []
    values: list[float] = []
    for i, word in enumerate(states):
        steps = word.steps
        for site in range(1, windows + 1):
            moved = exchange_at(steps, site)
            if moved is not None:
                new, _, _ = moved
                rows.append(i)
                cols.append(states.index(word.replace(new)))
                values.append(weight)

            if colors > 1:
                start = peak_in_window(steps, site)
                if start is None:
                    continue
                for color in range(1, colors + 1):
                    if color == steps[start - 1].color:
                        continue
                    rows.append(i)
                    cols.append(states.index(word.replace(recolor_peak(steps, start, color))))
                    values.append(weight)

    P = _assemble(states, rows, cols, values)
    pi = np.full(len(states), 1.0 / len(states))
    return ChainSpec(
        states, P, pi, ChainKind.FREDKIN, n, colors,
        params={"move_prob": move_prob, "proposals": proposals, "move_kinds": [
            MoveKind.EXCHANGE_UP.value, MoveKind.EXCHANGE_DOWN.value, MoveKind.RECOLOR.value
        ]},
    )


def _peak_displacing_chain(n: int, colors: int) -> ChainSpec:
    states = word_table(2 * n, colors, PathKind.DYCK)
    rows: list[int] = []
    cols: list[int] = []
    values: list[float] = []
    for i, word in enumerate(states):
        for target, probability in peak_displace_targets(word, colors):
            j = states.index(target)
            if j != i:
                rows.append(i)
                cols.append(j)
                values.append(float(probability))

    P = _assemble(states, rows, cols, values)
    pi = np.full(len(states), 1.0 / len(states))
    return ChainSpec(states, P, pi, ChainKind.PEAK_DISPLACING, n, colors)


def _lattice_chain(n: int, positive: bool) -> ChainSpec:
    kind = PathKind.DYCK if positive else PathKind.LATTICE
    states = word_table(2 * n, 1, kind)
    bonds = 2 * n - 1
    weight = 0.5 / bonds

    rows: list[int] = []
    cols: list[int] = []
    values: list[float] = []
    for i, word in enumerate(states):
        steps = word.steps
        for site in range(1, bonds + 1):
            a, b = steps[site - 1], steps[site]
            if a.direction is b.direction:
                continue
            new = steps[: site - 1] + (b, a) + steps[site + 1 :]
            if positive and not is_valid(new, PathKind.DYCK):
                continue
            rows.append(i)
            cols.append(states.index(word.replace(new)))
            values.append(weight)

    P = _assemble(states, rows, cols, values)
    pi = np.full(len(states), 1.0 / len(states))
    chain_kind = ChainKind.POSITIVE_LATTICE if positive else ChainKind.LATTICE
    return ChainSpec(states, P, pi, chain_kind, n, 1)

