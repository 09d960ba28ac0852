# Fredkin Lab - 诱导链
"""
子集 B 上的诱导链

两种方式:
- idle: 保留 B 内的非对角转移，离开 B 的概率并入对角（空转）
- watched: 精确的被观察链 P_BB + P_BC (I − P_CC)^{-1} P_CB
两者都以 π 在 B 上的归一化限制为平稳分布。
"""

from collections.abc import Sequence
from enum import Enum
from typing import Any

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
import structlog

from common.errors import UsageError
from markov.chain import ChainSpec

logger = structlog.get_logger()


class InducedMode(str, Enum):
    IDLE = "idle"
    WATCHED = "watched"


class _SubsetStates(Sequence[Any]):
    """原状态序列的子序列视图"""

    def __init__(self, states: Sequence[Any], indices: np.ndarray) -> None:
        self._states = states
        self._indices = indices
        self._lookup = {int(k): pos for pos, k in enumerate(indices)}

    def __len__(self) -> int:
        return int(self._indices.size)

    def __getitem__(self, i: int) -> Any:  # type: ignore[override]
        return self._states[int(self._indices[i])]

    def index(self, state: Any, start: int = 0, stop: int | None = None) -> int:
        pos = self._lookup.get(int(self._states.index(state)))
        if pos is None:
            raise ValueError("状态不在子集中")
        return pos


def _subset_indices(chain: ChainSpec, subset: Sequence[Any]) -> np.ndarray:
    indices = set()
    for item in subset:
        if isinstance(item, (int, np.integer)):
            indices.add(int(item))
        else:
            indices.add(chain.index_of(item))
    if not indices:
        raise UsageError("诱导链的子集不能为空")
    ordered = np.array(sorted(indices), dtype=np.int64)
    if ordered[0] < 0 or ordered[-1] >= chain.num_states:
        raise UsageError("子集下标越界", states=chain.num_states)
    return ordered


def induced_chain(
    chain: ChainSpec,
    subset: Sequence[Any],
    mode: InducedMode | str = InducedMode.IDLE,
) -> ChainSpec:
    """限制到子集 B 的诱导链

    Args:
        chain: 原链
        subset: 状态或下标的集合
        mode: idle / watched

    Raises:
        UsageError: 子集为空
    """
    mode = InducedMode(mode)
    keep = _subset_indices(chain, subset)
    P = chain.P.tocsr()
    P_bb = P[keep][:, keep]

    if mode is InducedMode.IDLE:
        off = P_bb - sp.diags(P_bb.diagonal())
        induced = off + sp.diags(1.0 - np.asarray(off.sum(axis=1)).ravel())
    else:
        rest = np.setdiff1d(np.arange(chain.num_states), keep)
        induced = P_bb
        if rest.size:
            P_bc = P[keep][:, rest]
            P_cb = P[rest][:, keep].toarray()
            system = (sp.identity(rest.size, format="csc") - P[rest][:, rest]).tocsc()
            escape = np.asarray(spla.spsolve(system, P_cb)).reshape(rest.size, keep.size)
            induced = sp.csr_matrix(P_bb.toarray() + P_bc @ escape)
        # 数值上的行和漂移归入对角
        drift = 1.0 - np.asarray(induced.sum(axis=1)).ravel()
        induced = induced + sp.diags(drift)

    pi = chain.pi[keep]
    pi = pi / pi.sum()
    logger.info(
        "诱导链", kind=chain.kind.value, n=chain.n, mode=mode.value, size=int(keep.size)
    )
    return ChainSpec(
        _SubsetStates(chain.states, keep),
        sp.csr_matrix(induced),
        pi,
        chain.kind,
        chain.n,
        chain.colors,
        label=f"induced:{mode.value}",
        params={**chain.params, "induced_mode": mode.value},
    )
