# Fredkin Lab - 枚举缓存
"""
枚举结果缓存

按 (kind, length, s) 计算哈希键，将排序后的码数组存为 .npy，
索引写入 index.json。目录由 FREDKIN_LAB_CACHE 指定。
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np
import structlog

from configs.settings import get_settings

logger = structlog.get_logger()


@dataclass
class CacheRecord:
    """缓存记录"""
    key: str
    kind: str
    length: int
    colors: int
    count: int
    file_name: str
    metadata: dict[str, Any] = field(default_factory=dict)


class EnumerationCache:
    """枚举缓存管理器"""

    def __init__(self, root: Path):
        """初始化缓存目录

        Args:
            root: 缓存根目录
        """
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

        self._index_path = self.root / "index.json"
        self._records: dict[str, CacheRecord] = {}
        self._load_index()

    def _load_index(self) -> None:
        """加载索引"""
        if not self._index_path.exists():
            return
        try:
            with open(self._index_path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("缓存索引损坏，忽略", path=str(self._index_path), error=str(e))
            return
        for key, record in data.items():
            self._records[key] = CacheRecord(**record)
        logger.debug("加载枚举缓存索引", count=len(self._records))

    def _save_index(self) -> None:
        """保存索引"""
        data = {key: asdict(record) for key, record in sorted(self._records.items())}
        with open(self._index_path, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)

    @staticmethod
    def compute_key(kind: str, length: int, colors: int) -> str:
        """计算缓存键

        Returns:
            16位哈希字符串
        """
        content = json.dumps(
            {"kind": kind, "length": length, "colors": colors},
            sort_keys=True,
        )
        return hashlib.sha256(content.encode()).hexdigest()[:16]

    def load(self, kind: str, length: int, colors: int) -> Optional[np.ndarray]:
        """读取缓存的码数组，不存在则返回 None"""
        key = self.compute_key(kind, length, colors)
        record = self._records.get(key)
        if record is None:
            return None

        file_path = self.root / record.file_name
        if not file_path.exists():
            logger.warning("缓存文件缺失", path=str(file_path))
            return None

        codes = np.load(file_path)
        if codes.size != record.count:
            logger.warning("缓存记录与文件不一致", key=key, expected=record.count, actual=codes.size)
            return None

        logger.debug("命中枚举缓存", kind=kind, length=length, colors=colors, count=codes.size)
        return codes

    def save(self, kind: str, length: int, colors: int, codes: np.ndarray) -> CacheRecord:
        """写入码数组"""
        key = self.compute_key(kind, length, colors)
        file_name = f"{key}.npy"
        np.save(self.root / file_name, codes)

        record = CacheRecord(
            key=key,
            kind=kind,
            length=length,
            colors=colors,
            count=int(codes.size),
            file_name=file_name,
        )
        self._records[key] = record
        self._save_index()

        logger.info("写入枚举缓存", kind=kind, length=length, colors=colors, count=codes.size)
        return record

    def list_records(self) -> list[CacheRecord]:
        """列出缓存记录（按键排序）"""
        return [self._records[k] for k in sorted(self._records)]


def get_enumeration_cache() -> Optional[EnumerationCache]:
    """按 FREDKIN_LAB_CACHE 返回缓存实例，未配置返回 None"""
    root = get_settings().cache
    if root is None:
        return None
    return EnumerationCache(root)
