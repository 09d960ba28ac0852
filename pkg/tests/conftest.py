# Fredkin Lab - 测试夹具
"""
公共夹具

每个测试前清空设置缓存并去掉 FREDKIN_LAB_* 环境变量，
避免本机 .env 或缓存目录影响结果。
"""

from pathlib import Path

import pytest

from combinatorics.words import PathKind, parse_word
from configs.settings import reset_settings_cache
from reports.generator import ReportWriter, RunMetadata


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch: pytest.MonkeyPatch):
    for name in ("FREDKIN_LAB_CACHE", "FREDKIN_LAB_CONFIG_PATH", "FREDKIN_LAB_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    reset_settings_cache()
    yield
    reset_settings_cache()


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    path = tmp_path / "out"
    path.mkdir()
    return path


@pytest.fixture
def writer(out_dir: Path) -> ReportWriter:
    return ReportWriter(out_dir, RunMetadata({"command": "test", "n": [2]}, seed=7))


@pytest.fixture
def uudd():
    return parse_word("uudd", PathKind.DYCK)


@pytest.fixture
def udud():
    return parse_word("udud", PathKind.DYCK)
