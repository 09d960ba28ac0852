# Fredkin Lab - 运行设置
"""
运行设置

LabSettings 读取 FREDKIN_LAB_* 环境变量（含 .env），
lab.yaml 提供上限与容差默认值。
"""

from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import structlog
import yaml
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = structlog.get_logger()

DEFAULT_CONFIG_PATH = Path(__file__).parent / "lab.yaml"


class LabSettings(BaseSettings):
    """环境设置

    Attributes:
        cache: 枚举缓存目录（FREDKIN_LAB_CACHE），未设置则不缓存
        config_path: 上限/容差配置文件
        log_level: 日志级别
    """

    model_config = SettingsConfigDict(
        env_prefix="FREDKIN_LAB_",
        env_file=".env",
        extra="ignore",
    )

    cache: Optional[Path] = None
    config_path: Path = DEFAULT_CONFIG_PATH
    log_level: str = "INFO"


@lru_cache(maxsize=1)
def get_settings() -> LabSettings:
    """获取全局设置（进程内缓存）"""
    return LabSettings()


@lru_cache(maxsize=4)
def load_lab_config(path: Optional[Path] = None) -> dict[str, Any]:
    """加载 lab.yaml

    Args:
        path: 配置文件路径，默认取设置中的 config_path
    """
    config_path = Path(path) if path else get_settings().config_path
    if not config_path.exists():
        logger.warning("配置文件不存在，回退到默认配置", path=str(config_path))
        config_path = DEFAULT_CONFIG_PATH

    with open(config_path) as f:
        config = yaml.safe_load(f) or {}

    logger.debug("加载配置", path=str(config_path), sections=sorted(config))
    return config


def get_cap(name: str) -> int:
    """读取资源上限"""
    return int(load_lab_config()["caps"][name])


def get_tolerance(name: str) -> float:
    """读取检查容差"""
    return float(load_lab_config()["tolerances"][name])


def get_section(name: str) -> dict[str, Any]:
    """读取整段配置"""
    return dict(load_lab_config().get(name, {}))


def reset_settings_cache() -> None:
    """清空设置缓存（测试中切换环境变量时使用）"""
    get_settings.cache_clear()
    load_lab_config.cache_clear()
