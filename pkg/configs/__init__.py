# Fredkin Lab - 配置模块
"""
配置模块

提供:
- lab.yaml: 上限、求解器参数、容差
- LabSettings: FREDKIN_LAB_* 环境变量
"""

from configs.settings import (
    LabSettings,
    get_cap,
    get_section,
    get_settings,
    get_tolerance,
    load_lab_config,
    reset_settings_cache,
)

__all__ = [
    "LabSettings",
    "get_settings",
    "load_lab_config",
    "get_cap",
    "get_tolerance",
    "get_section",
    "reset_settings_cache",
]
