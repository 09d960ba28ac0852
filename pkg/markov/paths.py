# Fredkin Lab - 规范路径
"""
规范路径与两类路径界

包含:
- CanonicalPathSet: 源状态 → {目标状态: 状态下标序列} 的路径生成器
- comparison_constant: 比较定理常数 A
- congestion_rho: Jerrum-Sinclair 拥塞 ρ 与最长路径 L
"""

from collections import defaultdict, deque
from collections.abc import Callable, Mapping, Sequence
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
import structlog

from combinatorics.moves import canonical_paths_from
from common.errors import InvariantViolation, MissingPathError, UsageError
from markov.chain import ChainSpec

logger = structlog.get_logger()

PathMap = Mapping[int, Sequence[int]]


@dataclass(frozen=True, eq=False)
class CanonicalPathSet:
    """规范路径生成器

    Attributes:
        paths_from: 源下标 → {目标下标: 含两端点的下标序列}
        label: 路径族名称
    """
    paths_from: Callable[[int], PathMap]
    label: str = ""

    def path(self, x: int, y: int) -> list[int]:
        """x 到 y 的路径，未登记时抛 MissingPathError"""
        if x == y:
            return [x]
        found = self.paths_from(x).get(y)
        if found is None:
            raise MissingPathError("未登记的规范路径", source=x, target=y, family=self.label)
        return list(found)


def walk_the_peak_paths(chain: ChainSpec) -> CanonicalPathSet:
    """峰位移邻居之间的走峰路径（每一步为一次 Fredkin 移动）"""
    states = chain.states

    def paths_from(x: int) -> dict[int, list[int]]:
        routes = canonical_paths_from(states[x], chain.colors)
        return {
            states.index(target): [states.index(word) for word in route]
            for target, route in routes.items()
        }

    return CanonicalPathSet(paths_from, label="walk_the_peak")


def identity_paths(chain: ChainSpec) -> CanonicalPathSet:
    """每条边自身作为长度 1 的路径"""

    def paths_from(x: int) -> dict[int, list[int]]:
        return {y: [x, y] for y in chain.row(x) if y != x}

    return CanonicalPathSet(paths_from, label="identity")


def interval_paths(chain: ChainSpec) -> CanonicalPathSet:
    """一维链上的区间路径 x, x±1, ..., y

    要求链只在相邻下标之间转移（如奇子格上的跳跃链）。

    Raises:
        UsageError: 存在非相邻下标的转移
    """
    for i, j, _ in chain.edges():
        if abs(i - j) != 1:
            raise UsageError("区间路径要求只在相邻下标之间转移", source=i, target=j)

    def paths_from(x: int) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for y in range(chain.num_states):
            if y != x:
                step = 1 if y > x else -1
                out[y] = list(range(x, y + step, step))
        return out

    return CanonicalPathSet(paths_from, label="interval")


def bfs_paths(chain: ChainSpec) -> CanonicalPathSet:
    """广度优先的最短路径（邻居按下标升序访问）"""

    def paths_from(x: int) -> dict[int, list[int]]:
        parent = {x: x}
        queue = deque([x])
        while queue:
            z = queue.popleft()
            for w in sorted(chain.row(z)):
                if w not in parent:
                    parent[w] = z
                    queue.append(w)
        out: dict[int, list[int]] = {}
        for y in parent:
            if y == x:
                continue
            route = [y]
            while route[-1] != x:
                route.append(parent[route[-1]])
            out[y] = route[::-1]
        return out

    return CanonicalPathSet(paths_from, label="bfs")


def _same_states(a: ChainSpec, b: ChainSpec) -> bool:
    if a.num_states != b.num_states:
        return False
    codes_a = getattr(a.states, "codes", None)
    codes_b = getattr(b.states, "codes", None)
    if codes_a is not None and codes_b is not None:
        return bool(np.array_equal(codes_a, codes_b))
    return list(a.states) == list(b.states)


def _edge_rate(chain: ChainSpec, z: int, w: int) -> float:
    return float(chain.P[z, w])


# ============================================
# 比较定理常数
# ============================================

@dataclass(frozen=True)
class ComparisonResult:
    """比较常数 A 及诊断

    Attributes:
        constant: A
        edge: 取得最大值的目标链边 (z, w)
        load: 该边上的 Σ|γ|·π̃(x)P̃(x,y)
        paths_through_edge: 经过该边的路径数
        max_path_length: 最长路径步数
        num_paths: 登记的参考链边数
        approx_reference_rate: 近似 P̃ ≈ 1/(s(2n)²)
        min_reference_rate: 实际最小非对角 P̃
    """
    constant: float
    edge: tuple[int, int]
    load: float
    paths_through_edge: int
    max_path_length: int
    num_paths: int
    approx_reference_rate: float
    min_reference_rate: float

    def gap_lower_bound(self, reference_gap: float) -> float:
        """目标链谱隙下界 (1/A)·gap(参考链)"""
        return reference_gap / self.constant

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def comparison_constant(
    target: ChainSpec,
    reference: ChainSpec,
    paths: CanonicalPathSet,
) -> ComparisonResult:
    """A = max_{(z,w)} [1/(π(z)P(z,w))] Σ_{γ∋(z,w)} |γ|·π̃(x)P̃(x,y)

    Raises:
        UsageError: 两条链状态空间不同
        MissingPathError: 参考链的某条边没有登记路径
        InvariantViolation: 路径经过目标链中不存在的边
    """
    if not _same_states(target, reference):
        raise UsageError(
            "比较定理要求相同的状态空间",
            target=target.num_states,
            reference=reference.num_states,
        )

    load: dict[tuple[int, int], float] = defaultdict(float)
    through: dict[tuple[int, int], int] = defaultdict(int)
    longest = 0
    count = 0

    for x in range(reference.num_states):
        row = reference.row(x)
        routes = paths.paths_from(x)
        for y, rate in row.items():
            if y == x:
                continue
            route = routes.get(y)
            if route is None:
                raise MissingPathError(
                    "参考链的边没有规范路径", source=x, target=y, family=paths.label
                )
            length = len(route) - 1
            weight = length * float(reference.pi[x]) * rate
            longest = max(longest, length)
            count += 1
            for z, w in zip(route[:-1], route[1:]):
                load[(z, w)] += weight
                through[(z, w)] += 1

    if not load:
        raise UsageError("参考链没有非对角转移", states=reference.num_states)

    best_edge = (-1, -1)
    best = -np.inf
    for (z, w), value in sorted(load.items()):
        rate = _edge_rate(target, z, w)
        if rate <= 0 or z == w:
            raise InvariantViolation("规范路径经过目标链中不存在的边", source=z, target=w)
        ratio = value / (float(target.pi[z]) * rate)
        if ratio > best:
            best, best_edge = ratio, (z, w)

    result = ComparisonResult(
        constant=float(best),
        edge=best_edge,
        load=float(load[best_edge]),
        paths_through_edge=int(through[best_edge]),
        max_path_length=longest,
        num_paths=count,
        approx_reference_rate=1.0 / (reference.colors * (2 * reference.n) ** 2),
        min_reference_rate=reference.min_transition(),
    )
    logger.info(
        "比较常数",
        n=target.n,
        colors=target.colors,
        constant=result.constant,
        max_path_length=longest,
        family=paths.label,
    )
    return result


# ============================================
# 拥塞
# ============================================

@dataclass(frozen=True)
class CongestionResult:
    """拥塞 ρ、最长路径 L 与谱隙下界 1/(ρL)"""
    rho: float
    max_length: int
    edge: tuple[int, int]

    @property
    def gap_lower_bound(self) -> float:
        return 1.0 / (self.rho * self.max_length)

    def certifies(self, gap: float, tol: float = 1e-12) -> bool:
        return gap >= self.gap_lower_bound - tol

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["gap_lower_bound"] = self.gap_lower_bound
        return data


def congestion_rho(chain: ChainSpec, paths: CanonicalPathSet) -> CongestionResult:
    """ρ = max_e [1/Q(e)] Σ_{γ_xy ∋ e} π(x)π(y)，对全部有序对

    Q(e) = π(z)P(z,w)；边按无向计。

    Raises:
        UsageError: 单状态链
        InvariantViolation: 某对状态之间没有路径，或路径经过不存在的边
    """
    size = chain.num_states
    if size < 2:
        raise UsageError("单状态链没有拥塞", states=size)

    load: dict[tuple[int, int], float] = defaultdict(float)
    longest = 0
    for x in range(size):
        routes = paths.paths_from(x)
        for y in range(size):
            if y == x:
                continue
            route = routes.get(y)
            if route is None:
                raise InvariantViolation("状态对之间没有路径", source=x, target=y)
            longest = max(longest, len(route) - 1)
            weight = float(chain.pi[x] * chain.pi[y])
            for z, w in zip(route[:-1], route[1:]):
                load[(min(z, w), max(z, w))] += weight

    best_edge = (-1, -1)
    best = -np.inf
    for (z, w), value in sorted(load.items()):
        rate = _edge_rate(chain, z, w)
        if rate <= 0 or z == w:
            raise InvariantViolation("路径经过链中不存在的边", source=z, target=w)
        ratio = value / (float(chain.pi[z]) * rate)
        if ratio > best:
            best, best_edge = ratio, (z, w)

    result = CongestionResult(rho=float(best), max_length=longest, edge=best_edge)
    logger.info("拥塞", kind=chain.kind.value, n=chain.n, rho=result.rho, max_length=longest)
    return result


def max_stationary_ratio(chain: ChainSpec) -> float:
    """max π(k)/π(j)"""
    pi = np.asarray(chain.pi)
    return float(pi.max() / pi.min())
