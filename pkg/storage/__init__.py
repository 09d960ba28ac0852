# Fredkin Lab - 存储层模块
"""
Storage 模块

包含:
- cache: 路径枚举结果的哈希索引缓存
"""

from storage.cache import CacheRecord, EnumerationCache, get_enumeration_cache

__all__ = ["CacheRecord", "EnumerationCache", "get_enumeration_cache"]
