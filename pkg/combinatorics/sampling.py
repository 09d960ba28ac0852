# Fredkin Lab - 均匀采样
"""
均匀 Dyck 路径采样（循环引理）

n 个 +1 与 n+1 个 −1 随机排列，从首个最小前缀和之后旋转，
去掉末尾的 −1 即得均匀分布的 Dyck 路径；颜色按匹配对独立均匀选取。
批量采样时每批使用 SeedSequence 派生的独立种子流，结果与 worker 数无关。
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np
import structlog

from combinatorics.words import Direction, PathKind, PathWord, Step
from common.log import configure_logging

logger = structlog.get_logger()


def sample_dyck_shapes(rng: np.random.Generator, n: int, batch: int) -> np.ndarray:
    """采样 batch 条长度 2n 的 Dyck 形状（±1 矩阵，int8）"""
    if n < 1:
        raise ValueError(f"采样需要 n >= 1，收到 {n}")
    size = 2 * n + 1
    base = np.concatenate([np.ones(n, dtype=np.int8), -np.ones(n + 1, dtype=np.int8)])
    words = rng.permuted(np.tile(base, (batch, 1)), axis=1)

    sums = np.cumsum(words, axis=1, dtype=np.int32)
    start = np.argmin(sums, axis=1) + 1
    index = (start[:, None] + np.arange(size)[None, :]) % size
    rotated = np.take_along_axis(words, index, axis=1)
    return rotated[:, :-1]


def sample_dyck_uniform(n: int, colors: int = 1, seed: Optional[int] = None) -> PathWord:
    """均匀采样一条 s 色 Dyck 路径"""
    rng = np.random.default_rng(seed)
    shape = sample_dyck_shapes(rng, n, 1)[0]
    pair_colors = rng.integers(1, colors + 1, size=n)

    steps: list[Step] = []
    stack: list[int] = []
    opened = 0
    for delta in shape:
        if delta > 0:
            color = int(pair_colors[opened])
            opened += 1
            stack.append(color)
            steps.append(Step(Direction.UP, color))
        else:
            steps.append(Step(Direction.DOWN, stack.pop()))
    return PathWord(tuple(steps), PathKind.DYCK)


def _area_batch(n: int, batch: int, seed: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(seed)
    shapes = sample_dyck_shapes(rng, n, batch)
    heights = np.cumsum(shapes, axis=1, dtype=np.int32)
    return heights.sum(axis=1, dtype=np.int64)


def sample_dyck_areas(
    n: int,
    samples: int,
    seed: int,
    *,
    batch_size: int = 1000,
    workers: int = 1,
) -> np.ndarray:
    """批量采样 Dyck 面积 Σ y_i

    Args:
        n: 半长度
        samples: 样本数
        seed: 主种子
        batch_size: 每批样本数（决定种子流划分）
        workers: 并行进程数

    Returns:
        int64 面积数组，顺序只由 seed 与 batch_size 决定
    """
    batches = [batch_size] * (samples // batch_size)
    if samples % batch_size:
        batches.append(samples % batch_size)
    children = np.random.SeedSequence(seed).spawn(len(batches))

    logger.info("开始面积采样", n=n, samples=samples, batches=len(batches), workers=workers)

    if workers > 1:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=configure_logging, initargs=("WARNING",)
        ) as pool:
            parts = list(pool.map(_area_batch, [n] * len(batches), batches, children))
    else:
        parts = [_area_batch(n, size, child) for size, child in zip(batches, children)]

    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
