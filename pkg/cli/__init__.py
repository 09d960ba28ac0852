# Fredkin Lab - 命令行模块
"""
CLI 模块

包含:
- config: RunConfig 与 JSON 配置文件合并
- commands: 各子命令的 runner
- verify: 不变量检查注册表
- main: argparse 入口与退出码映射
"""

from cli.commands import RUNNERS, CommandOutcome, run_jobs
from cli.config import COMMANDS, RunConfig, build_config, parse_range
from cli.main import build_parser, main, run
from cli.verify import CheckModule, CheckResult, get_check_registry, run_checks, run_verify

__all__ = [
    "COMMANDS",
    "RUNNERS",
    "CheckModule",
    "CheckResult",
    "CommandOutcome",
    "RunConfig",
    "build_config",
    "build_parser",
    "get_check_registry",
    "main",
    "parse_range",
    "run",
    "run_checks",
    "run_jobs",
    "run_verify",
]
