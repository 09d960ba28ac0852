# Fredkin Lab - 运行配置
"""
RunConfig: 一次 CLI 运行的全部参数

- n 范围写作 "2..8"、"3,5,7" 或单个整数
- JSON 配置文件与命令行参数同名；命令行显式给出的值覆盖文件
- 所有数值范围在分派前校验，失败统一转成 UsageError（退出码 64）
"""

import json
from pathlib import Path
from typing import Any, Optional

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from common.errors import MissingInputError, UsageError
from configs.settings import get_tolerance
from defect.hopping import HeffConvention, Sublattice
from markov.chain import ChainKind

logger = structlog.get_logger()

COMMANDS = (
    "gap-scan",
    "mixing",
    "compare-bound",
    "congestion",
    "hopping",
    "defect",
    "excursion",
    "twisted",
    "entropy",
    "verify",
    "plot",
)

# 不影响计算结果的字段，不写进输出文件的 metadata
RUNTIME_FIELDS = {"output", "log_level", "workers", "inputs", "config_file"}


def parse_range(text: str | int | list[int]) -> list[int]:
    """解析 n 范围

    Examples:
        "2..5" → [2, 3, 4, 5]；"3,5,9" → [3, 5, 9]；"1..9:2" → [1, 3, 5, 7, 9]

    Raises:
        UsageError: 无法解析或范围为空
    """
    if isinstance(text, int):
        values = [text]
    elif isinstance(text, list):
        values = [int(v) for v in text]
    else:
        text = text.strip()
        try:
            if ".." in text:
                body, _, step_text = text.partition(":")
                lo, hi = (int(part) for part in body.split("..", 1))
                step = int(step_text) if step_text else 1
                if step < 1:
                    raise UsageError("范围步长必须为正", range=text)
                values = list(range(lo, hi + 1, step))
            else:
                values = [int(part) for part in text.split(",") if part.strip()]
        except ValueError as e:
            raise UsageError("无法解析 n 范围", range=text) from e
    if not values:
        raise UsageError("n 范围为空", range=str(text))
    return values


class RunConfig(BaseModel):
    """CLI 运行配置

    Attributes:
        command: 子命令
        n: 规模序列（hopping / defect / congestion 的 hopping_walk 中为奇数链长 m）
        s: 颜色数
        model: gap-scan 的模型
        sector: balanced / full
        chain: mixing / congestion 使用的链
        eps: 混合时间阈值 ε
        seed: 随机种子（写入每个输出文件）
        samples: Monte Carlo 样本数
        mc_n: Monte Carlo 的半长度
        theta: 扭曲态 θ̃，默认 n^{−3/2}/√(10/3 − π)
        convention: H_eff 约定
        sublattice: 映射游走的子格
        tolerances: 覆盖 lab.yaml 中的检查容差
        output: 输出目录
        emit_plots: 是否同时生成 SVG
        only: verify 只运行这些模块的检查
        inject_fault: verify 的故障注入钩子
        inputs: plot 的输入报告
    """

    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    command: str
    n: list[int] = Field(default_factory=lambda: [2, 3, 4])
    s: int = Field(1, ge=1, le=9)
    model: str = "fredkin"
    sector: str = "balanced"
    chain: ChainKind = ChainKind.FREDKIN
    eps: float = Field(0.25, gt=0.0, lt=0.5)
    seed: int = Field(0, ge=0)
    samples: int = Field(100_000, ge=2)
    mc_n: int = Field(5000, ge=1, le=1_000_000)
    theta: Optional[float] = None
    convention: HeffConvention = HeffConvention.LITERAL
    sublattice: Sublattice = Sublattice.ODD
    tolerances: dict[str, float] = Field(default_factory=dict)
    output: Path = Path("fredkin-out")
    emit_plots: bool = False
    workers: int = Field(1, ge=1)
    only: list[str] = Field(default_factory=list)
    inject_fault: Optional[str] = None
    inputs: list[Path] = Field(default_factory=list)
    log_level: str = "INFO"
    config_file: Optional[Path] = None

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"未知子命令 {value}")
        return value

    @field_validator("n", mode="before")
    @classmethod
    def _parse_n(cls, value: Any) -> list[int]:
        return parse_range(value)

    @field_validator("n")
    @classmethod
    def _positive_n(cls, value: list[int]) -> list[int]:
        if any(v < 1 for v in value):
            raise ValueError("n 必须为正整数")
        return value

    @field_validator("model")
    @classmethod
    def _known_model(cls, value: str) -> str:
        if value not in ("fredkin", "motzkin"):
            raise ValueError(f"未知模型 {value}")
        return value

    @field_validator("sector")
    @classmethod
    def _known_sector(cls, value: str) -> str:
        if value not in ("balanced", "full"):
            raise ValueError(f"未知扇区 {value}")
        return value

    @model_validator(mode="after")
    def _check_combination(self) -> "RunConfig":
        if self.command == "gap-scan" and self.model == "motzkin" and self.sector == "balanced":
            # Motzkin 只在全空间上构造
            self.sector = "full"
        if self.command in ("hopping", "defect") and any(m < 3 or m % 2 == 0 for m in self.n):
            raise ValueError("链长 m 必须是不小于 3 的奇数")
        return self

    def metadata_config(self) -> dict[str, Any]:
        """写入输出文件的配置（去掉运行时字段）"""
        return self.model_dump(mode="json", exclude=RUNTIME_FIELDS)

    def tolerance(self, name: str) -> float:
        """命令行 / 配置文件覆盖优先，否则取 lab.yaml"""
        return float(self.tolerances.get(name, get_tolerance(name)))


def load_config_file(path: Path) -> dict[str, Any]:
    """读取 JSON 配置文件

    Raises:
        MissingInputError: 文件不存在
        UsageError: 不是 JSON 对象
    """
    path = Path(path)
    if not path.is_file():
        raise MissingInputError("配置文件不存在", path=str(path))
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise UsageError("配置文件不是合法 JSON", path=str(path), error=str(e)) from e
    if not isinstance(data, dict):
        raise UsageError("配置文件顶层必须是对象", path=str(path))
    # 文件里的键与命令行选项同名（连字符或下划线均可）
    return {key.replace("-", "_"): value for key, value in data.items()}


def build_config(command: str, flags: dict[str, Any], config_file: Optional[Path] = None) -> RunConfig:
    """合并配置文件与命令行参数

    Args:
        command: 子命令
        flags: 命令行参数（值为 None 表示未显式给出）
        config_file: JSON 配置文件

    Raises:
        UsageError: 校验失败
    """
    values: dict[str, Any] = {}
    if config_file is not None:
        values.update(load_config_file(config_file))
        values["config_file"] = config_file
    values.update({k: v for k, v in flags.items() if v is not None})
    values["command"] = command
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        errors = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise UsageError("配置校验失败", errors=errors) from e
    logger.debug("运行配置", command=command, config=config.metadata_config())
    return config
