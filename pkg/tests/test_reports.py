# Fredkin Lab - 报告测试

import json
import math
from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from common import __version__
from common.errors import MalformedReportError, MissingInputError
from reports import (
    ReportWriter,
    RunMetadata,
    config_hash,
    dumps,
    fit_loglog,
    is_non_increasing,
    max_violation,
    read_csv,
    read_json,
    relative_error,
    to_jsonable,
)
from reports.plots import emit_plots, normalize_svg


class _Color(str, Enum):
    RED = "red"


# ============================================
# 指标
# ============================================

def test_fit_loglog_power_law():
    x = np.array([2.0, 4.0, 8.0, 16.0])
    fit = fit_loglog(x, 3.0 * x**-2.5)
    assert fit.slope == pytest.approx(-2.5)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.points == 4


def test_fit_loglog_drops_non_positive():
    fit = fit_loglog([1.0, 2.0, 4.0], [0.0, 2.0, 4.0])
    assert fit.points == 2
    assert fit.slope == pytest.approx(1.0)


def test_fit_loglog_needs_two_points():
    with pytest.raises(ValueError):
        fit_loglog([1.0], [1.0])


def test_monotone_helpers():
    assert is_non_increasing([3.0, 2.0, 2.0, 1.0])
    assert not is_non_increasing([3.0, 2.0, 2.5])
    assert max_violation([3.0, 2.0, 2.5]) == pytest.approx(0.5)
    assert relative_error(1.1, 1.0) == pytest.approx(0.1)


# ============================================
# 写出与读取
# ============================================

def test_to_jsonable():
    payload = {
        "a": np.int64(3),
        "b": np.array([1.5, 2.5]),
        "c": math.nan,
        "d": 1 + 2j,
        "e": _Color.RED,
        "f": Path("x/y"),
        "g": np.bool_(True),
    }
    assert to_jsonable(payload) == {
        "a": 3,
        "b": [1.5, 2.5],
        "c": None,
        "d": {"re": 1.0, "im": 2.0},
        "e": "red",
        "f": "x/y",
        "g": True,
    }


def test_config_hash_ignores_key_order():
    assert config_hash({"n": [2, 3], "s": 1}) == config_hash({"s": 1, "n": [2, 3]})
    assert config_hash({"n": [2, 3]}) != config_hash({"n": [2, 4]})


def test_metadata_block():
    meta = RunMetadata({"n": [2]}, seed=4).to_dict()
    assert meta["version"] == __version__
    assert meta["seed"] == 4
    assert "timestamp" not in meta
    assert len(meta["config_hash"]) == 16


def test_csv_roundtrip(writer):
    frame = pd.DataFrame({"n": [2, 3], "gap": [2.0, 1 / 3]})
    path = writer.write_csv("gap.csv", frame)
    metadata, loaded = read_csv(path)
    assert metadata["seed"] == 7
    assert loaded["n"].tolist() == [2, 3]
    assert loaded["gap"].tolist() == [2.0, 1 / 3]
    assert path.read_text().splitlines()[1] == "n,gap"


def test_json_has_metadata(writer):
    path = writer.write_json("out.json", {"value": 0.1})
    data = read_json(path)
    assert data["value"] == 0.1
    assert data["metadata"]["config"] == {"command": "test", "n": [2]}
    assert path.read_text().endswith("}\n")


def test_output_is_byte_identical(tmp_path):
    frame = pd.DataFrame({"x": [0.1, 0.2], "y": [1e-20, 3.0]})
    texts = []
    for name in ("a", "b"):
        w = ReportWriter(tmp_path / name, RunMetadata({"n": [2]}, seed=0))
        texts.append((w.write_csv("t.csv", frame).read_bytes(), w.write_json("t.json", {"f": frame["x"].tolist()}).read_bytes()))
    assert texts[0] == texts[1]


def test_render_template(writer):
    path = writer.render(
        "verify_report.md.j2",
        "verify.md",
        scope="all",
        passed=1,
        failed=0,
        total=1,
        checks=[{
            "check_name": "demo",
            "module": "linalg",
            "status": "pass",
            "measured": 1e-13,
            "tolerance": 1e-10,
            "detail": "",
        }],
        failures=[],
    )
    text = path.read_text()
    assert "demo" in text
    assert writer.written[-1] == path


def test_read_csv_missing(tmp_path):
    with pytest.raises(MissingInputError) as info:
        read_csv(tmp_path / "nope.csv")
    assert info.value.exit_code == 66


def test_read_csv_without_metadata(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("n,gap\n2,2.0\n")
    with pytest.raises(MalformedReportError):
        read_csv(path)


def test_read_json_not_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text(json.dumps([1, 2]))
    with pytest.raises(MalformedReportError):
        read_json(path)


def test_dumps_sorted_keys():
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')


# ============================================
# 图表
# ============================================

def test_normalize_svg_replaces_uids():
    svg = '<clipPath id="clipab12cdxyplot"/><g clip-path="url(#clipab12cdxyplot)"/>'
    assert "ab12cd" not in normalize_svg(svg)
    assert normalize_svg(svg).count("clip000000") == 2


def test_emit_plots_rejects_unknown_csv(writer):
    path = writer.write_csv("other.csv", pd.DataFrame({"a": [1]}))
    with pytest.raises(MalformedReportError):
        emit_plots([path], writer.output_dir)


def test_emit_plots_missing_input(tmp_path):
    with pytest.raises(MissingInputError):
        emit_plots([tmp_path / "gone.csv"], tmp_path)


@pytest.mark.slow
def test_emit_gap_plot(writer):
    path = writer.write_csv("gap_scan.csv", pd.DataFrame({"n": [2, 3, 4], "gap": [2.0, 0.8, 0.4], "s": [1, 1, 1]}))
    written = emit_plots([path], writer.output_dir)
    assert [p.name for p in written] == ["gap_scan.svg"]
    assert written[0].read_text().lstrip().startswith("<svg")
