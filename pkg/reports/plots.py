# Fredkin Lab - 图表
"""
报告图表（plotly → SVG）

- gap 扫描: log-log 能隙曲线与拟合斜率标注
- mixing: TV 距离曲线
- 密度叠加: f_A 与缩放面积直方图
plotly 在 SVG 中写入随机 uid（clip-path 等），写出前统一替换为固定值，
相同输入得到逐字节相同的文件。
"""

import re
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
import plotly.graph_objects as go
import structlog

from common.errors import MalformedReportError, MissingInputError
from reports.generator import read_csv, read_json
from reports.metrics import fit_loglog

logger = structlog.get_logger()

_UID_PATTERN = re.compile(r"clip([0-9a-f]{6})")
_STABLE_UID = "000000"

_LAYOUT: dict[str, Any] = {
    "template": "simple_white",
    "width": 720,
    "height": 480,
    "font": {"family": "DejaVu Sans, Arial, sans-serif", "size": 13},
    "margin": {"l": 70, "r": 30, "t": 60, "b": 60},
}


def normalize_svg(svg: str) -> str:
    """把 plotly 随机 uid 替换为固定串"""
    for uid in sorted(set(_UID_PATTERN.findall(svg))):
        svg = svg.replace(uid, _STABLE_UID)
    return svg


def write_svg(figure: go.Figure, path: Path) -> Path:
    """渲染并写出 SVG（kaleido）"""
    raw = figure.to_image(format="svg")
    text = raw.decode("utf-8") if isinstance(raw, bytes) else str(raw)
    path = Path(path)
    path.write_text(normalize_svg(text), encoding="utf-8")
    logger.info("写出图表", path=str(path))
    return path


# ============================================
# 图表
# ============================================

def gap_figure(frame: pd.DataFrame) -> go.Figure:
    """log-log 能隙图，每个 (s, sector) 一条曲线"""
    figure = go.Figure()
    group_keys = [k for k in ("s", "sector") if k in frame.columns]
    groups = frame.groupby(group_keys, sort=True) if group_keys else [((), frame)]
    notes = []
    for key, part in groups:
        part = part.sort_values("n")
        label = ", ".join(f"{k}={v}" for k, v in zip(group_keys, np.atleast_1d(key)))
        figure.add_trace(go.Scatter(
            x=part["n"], y=part["gap"], mode="lines+markers", name=label or "gap",
        ))
        positive = part[part["gap"] > 0]
        if len(positive) >= 2:
            fit = fit_loglog(positive["n"], positive["gap"])
            notes.append(f"{label or 'gap'}: slope = {fit.slope:.3f}")

    figure.update_layout(
        **_LAYOUT,
        title="spectral gap vs n",
        xaxis={"title": "n", "type": "log"},
        yaxis={"title": "gap", "type": "log"},
    )
    if notes:
        figure.add_annotation(
            text="<br>".join(notes), xref="paper", yref="paper", x=0.98, y=0.98,
            showarrow=False, align="right",
        )
    return figure


def mixing_figure(frame: pd.DataFrame, eps: Optional[float] = None) -> go.Figure:
    """TV 距离随时间的曲线"""
    figure = go.Figure(go.Scatter(x=frame["t"], y=frame["tv"], mode="lines", name="TV"))
    figure.update_layout(
        **_LAYOUT,
        title="total variation distance",
        xaxis={"title": "t"},
        yaxis={"title": "d_TV", "type": "log"},
    )
    if eps is not None:
        figure.add_hline(y=eps, line_dash="dash", annotation_text=f"ε = {eps:g}")
    return figure


def density_figure(density: pd.DataFrame, histogram: dict[str, Any]) -> go.Figure:
    """f_A 曲线叠加缩放面积直方图"""
    edges = np.asarray(histogram["grid"], dtype=np.float64)
    values = np.asarray(histogram["density"], dtype=np.float64)
    centers = 0.5 * (edges[:-1] + edges[1:])
    figure = go.Figure()
    figure.add_trace(go.Bar(
        x=centers, y=values, width=np.diff(edges), name="Monte Carlo", opacity=0.5,
    ))
    figure.add_trace(go.Scatter(x=density["x"], y=density["f_A(x)"], mode="lines", name="f_A"))
    figure.update_layout(
        **_LAYOUT,
        title=f"scaled Dyck area, n = {histogram.get('n')}",
        xaxis={"title": "x"},
        yaxis={"title": "density"},
        bargap=0,
    )
    return figure


# ============================================
# 按输入分派
# ============================================

def emit_plots(inputs: Sequence[Path], output_dir: Path) -> list[Path]:
    """根据报告内容生成 SVG

    CSV 含 n,gap 列 → 能隙图；含 t,tv 列 → 混合曲线；
    x,f_A(x) 密度 CSV 与直方图 JSON 成对出现 → 叠加图。

    Raises:
        MissingInputError: 输入文件不存在
        MalformedReportError: 无法识别的报告
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    density: Optional[pd.DataFrame] = None
    histogram: Optional[dict[str, Any]] = None
    written: list[Path] = []

    for source in map(Path, inputs):
        if not source.exists():
            raise MissingInputError("报告文件不存在", path=str(source))
        if source.suffix == ".json":
            data = read_json(source)
            if "grid" not in data or "density" not in data:
                raise MalformedReportError("JSON 不是面积直方图", path=str(source))
            histogram = data
            continue

        metadata, frame = read_csv(source)
        target = output_dir / f"{source.stem}.svg"
        if {"n", "gap"} <= set(frame.columns):
            written.append(write_svg(gap_figure(frame), target))
        elif {"t", "tv"} <= set(frame.columns):
            eps = metadata.get("config", {}).get("eps")
            written.append(write_svg(mixing_figure(frame, eps), target))
        elif {"x", "f_A(x)"} <= set(frame.columns):
            density = frame
        else:
            raise MalformedReportError("无法识别的 CSV 报告", path=str(source), columns=list(frame.columns))

    if (density is None) != (histogram is None):
        raise MalformedReportError("密度叠加图需要密度 CSV 与直方图 JSON 各一个")
    if density is not None and histogram is not None:
        written.append(write_svg(density_figure(density, histogram), output_dir / "density_overlay.svg"))

    logger.info("图表生成完成", count=len(written))
    return written
