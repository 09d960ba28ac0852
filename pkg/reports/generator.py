# Fredkin Lab - 报告写出
"""
确定性报告写出

- CSV: pandas 写表，浮点 17 位有效数字，首行 "# metadata: {...}" 注释
- JSON: sort_keys + indent=2，顶层带 metadata 块
- Markdown: Jinja2 渲染 verify 汇总
metadata = {version, config, seed, config_hash}，不写时间戳，
相同配置与种子下输出逐字节一致。
"""

import hashlib
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd
import structlog
from jinja2 import Environment, FileSystemLoader, StrictUndefined

from common import __version__
from common.errors import MalformedReportError, MissingInputError

logger = structlog.get_logger()

TEMPLATES_DIR = Path(__file__).parent / "templates"
METADATA_PREFIX = "# metadata: "
CSV_FLOAT_FORMAT = "%.17g"


def config_hash(config: dict[str, Any]) -> str:
    """排序后配置 JSON 的 sha256 前 16 位"""
    text = json.dumps(to_jsonable(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def to_jsonable(value: Any) -> Any:
    """numpy / Enum / Path / complex → JSON 原生类型"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON 没有 NaN / Infinity
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return value


def dumps(payload: Any) -> str:
    """确定性 JSON 文本（float 使用最短往返表示）"""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class RunMetadata:
    """输出文件的元数据块"""
    config: dict[str, Any]
    seed: Optional[int]
    version: str = __version__

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "config": to_jsonable(self.config),
            "seed": self.seed,
            "config_hash": config_hash(self.config),
        }


class ReportWriter:
    """报告写出器

    所有文件写到 output_dir，文件名由调用方决定（每个任务独立文件）。
    """

    def __init__(self, output_dir: Path, metadata: RunMetadata, templates_dir: Path = TEMPLATES_DIR):
        """初始化写出器

        Args:
            output_dir: 输出目录（不存在时创建）
            metadata: 写入每个文件的元数据
            templates_dir: Jinja2 模板目录
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.metadata = metadata
        self.written: list[Path] = []

        self.env = Environment(
            loader=FileSystemLoader(str(templates_dir)),
            autoescape=False,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )
        self.env.filters["number"] = self._number_filter
        self.env.filters["json"] = self._json_filter

    # ============================================
    # 过滤器
    # ============================================

    @staticmethod
    def _number_filter(value: Any, digits: int = 6) -> str:
        if value is None:
            return "N/A"
        if isinstance(value, bool):
            return str(value).lower()
        if isinstance(value, (int, np.integer)):
            return str(value)
        return f"{float(value):.{digits}g}"

    @staticmethod
    def _json_filter(value: Any) -> str:
        return json.dumps(to_jsonable(value), sort_keys=True)

    # ============================================
    # 写出
    # ============================================

    def _track(self, path: Path) -> Path:
        self.written.append(path)
        logger.info("写出报告文件", path=str(path))
        return path

    def write_csv(self, name: str, frame: pd.DataFrame) -> Path:
        """写 CSV，首行为 metadata 注释"""
        path = self.output_dir / name
        buffer = io.StringIO()
        buffer.write(METADATA_PREFIX + json.dumps(self.metadata.to_dict(), sort_keys=True) + "\n")
        frame.to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        path.write_text(buffer.getvalue(), encoding="utf-8")
        return self._track(path)

    def write_json(self, name: str, payload: dict[str, Any]) -> Path:
        """写 JSON，顶层附加 metadata 键"""
        path = self.output_dir / name
        body = {**to_jsonable(payload), "metadata": self.metadata.to_dict()}
        path.write_text(dumps(body), encoding="utf-8")
        return self._track(path)

    def render(self, template_name: str, name: str, **context: Any) -> Path:
        """渲染 Markdown 模板"""
        template = self.env.get_template(template_name)
        text = template.render(metadata=self.metadata.to_dict(), **context)
        path = self.output_dir / name
        path.write_text(text, encoding="utf-8")
        return self._track(path)


# ============================================
# 读取
# ============================================

def _require(path: Path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise MissingInputError("输入文件不存在", path=str(path))
    return path


def read_csv(path: Path) -> tuple[dict[str, Any], pd.DataFrame]:
    """读取带 metadata 注释的 CSV

    Raises:
        MissingInputError: 文件不存在
        MalformedReportError: 缺少 metadata 行或无法解析
    """
    path = _require(path)
    text = path.read_text(encoding="utf-8")
    first, _, rest = text.partition("\n")
    if not first.startswith(METADATA_PREFIX):
        raise MalformedReportError("CSV 缺少 metadata 行", path=str(path))
    try:
        metadata = json.loads(first[len(METADATA_PREFIX):])
        frame = pd.read_csv(io.StringIO(rest))
    except (json.JSONDecodeError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise MalformedReportError("CSV 无法解析", path=str(path), error=str(e)) from e
    return metadata, frame


def read_json(path: Path) -> dict[str, Any]:
    """读取报告 JSON

    Raises:
        MissingInputError: 文件不存在
        MalformedReportError: 不是 JSON 对象
    """
    path = _require(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MalformedReportError("JSON 无法解析", path=str(path), error=str(e)) from e
    if not isinstance(data, dict):
        raise MalformedReportError("报告 JSON 顶层必须是对象", path=str(path))
    return data
