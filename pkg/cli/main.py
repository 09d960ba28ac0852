# Fredkin Lab - 命令行入口
"""
fredkin-lab 命令行

用法:
    fredkin-lab gap-scan --model fredkin --sector balanced --n 2..8 --s 1
    fredkin-lab mixing --chain fredkin --n 2..6 --eps 0.25
    fredkin-lab verify --only defect
    fredkin-lab plot out/gap_scan.csv out/mixing_n4.csv

退出码: 0 成功，2 不变量失败，3 资源上限，64 用法错误，66 输入缺失。
"""

import argparse
import sys
from pathlib import Path
from typing import Any, NoReturn, Optional, Sequence

import structlog

from cli.commands import RUNNERS, CommandOutcome
from cli.config import RunConfig, build_config
from cli.verify import run_verify
from common import __version__
from common.errors import LabError, UsageError
from common.log import configure_logging
from configs.settings import get_settings
from reports.generator import ReportWriter, RunMetadata, dumps

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_FAILED = 2


class LabArgumentParser(argparse.ArgumentParser):
    """参数错误抛 UsageError（退出码 64），不直接退出"""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _tolerance(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"容差需写作 名称=数值: {text}")
    try:
        return name.strip(), float(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"容差数值无法解析: {text}") from e


def _csv_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    """构造解析器；所有选项默认 None，未给出时由配置文件或模型默认值决定"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, dest="config_file", help="JSON 配置文件")
    common.add_argument("--n", help='规模范围，如 "2..8"、"3,5,7"')
    common.add_argument("--s", type=int, help="颜色数")
    common.add_argument("--seed", type=int, help="随机种子")
    common.add_argument("--output", type=Path, help="输出目录")
    common.add_argument("--workers", type=int, help="并行进程数")
    common.add_argument("--emit-plots", action="store_const", const=True, help="同时生成 SVG")
    common.add_argument("--tolerance", type=_tolerance, action="append", help="覆盖容差 名称=数值")
    common.add_argument("--log-level", help="日志级别")

    parser = LabArgumentParser(prog="fredkin-lab", description="Fredkin 自旋链能隙数值实验")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=LabArgumentParser)

    gap_scan = sub.add_parser("gap-scan", parents=[common], help="能隙随 n 的扫描")
    gap_scan.add_argument("--model", choices=["fredkin", "motzkin"])
    gap_scan.add_argument("--sector", choices=["balanced", "full"])

    mixing = sub.add_parser("mixing", parents=[common], help="TV 混合曲线与谱界")
    mixing.add_argument("--chain")
    mixing.add_argument("--eps", type=float)

    sub.add_parser("compare-bound", parents=[common], help="比较定理常数 A")

    congestion = sub.add_parser("congestion", parents=[common], help="规范路径拥塞 ρ")
    congestion.add_argument("--chain")

    for name, text in (("hopping", "次近邻跳跃模型"), ("defect", "单缺陷扇区")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--convention", choices=["literal", "projected"])
        p.add_argument("--sublattice", choices=["odd", "all"])

    excursion = sub.add_parser("excursion", parents=[common], help="Airy 分布与缩放面积")
    excursion.add_argument("--samples", type=int)
    excursion.add_argument("--mc-n", type=int)

    twisted = sub.add_parser("twisted", parents=[common], help="扭曲试探态能量")
    twisted.add_argument("--theta", type=float)

    sub.add_parser("entropy", parents=[common], help="半链纠缠熵")

    verify = sub.add_parser("verify", parents=[common], help="不变量检查")
    verify.add_argument("--only", type=_csv_list, help="只运行这些模块的检查")
    verify.add_argument("--inject-fault", help="故障注入（flip-sign）")
    verify.add_argument("--eps", type=float)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--mc-n", type=int)

    plot = sub.add_parser("plot", parents=[common], help="由报告生成 SVG")
    plot.add_argument("inputs", nargs="+", type=Path, help="CSV / JSON 报告")

    return parser


def _flags(args: argparse.Namespace) -> dict[str, Any]:
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config_file", "tolerance")}
    if args.tolerance:
        flags["tolerances"] = dict(args.tolerance)
    return flags


def run(config: RunConfig) -> CommandOutcome:
    """执行一个子命令"""
    writer = ReportWriter(config.output, RunMetadata(config.metadata_config(), config.seed))
    runner = run_verify if config.command == "verify" else RUNNERS[config.command]
    logger.info("开始运行", command=config.command, output=str(config.output))
    return runner(config, writer)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行主函数，返回退出码"""
    configure_logging(get_settings().log_level)
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            configure_logging(args.log_level)
        config = build_config(args.command, _flags(args), args.config_file)
        configure_logging(config.log_level)
        outcome = run(config)
    except LabError as e:
        logger.error("运行失败", error=str(e), exit_code=e.exit_code)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    sys.stdout.write(dumps({
        "command": config.command,
        "ok": outcome.ok,
        "files": [p.name for p in outcome.files],
        "failures": outcome.failures,
        "summary": outcome.summary,
    }))
    if not outcome.ok:
        for failure in outcome.failures:
            logger.error("检查未通过", detail=failure)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
