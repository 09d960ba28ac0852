# Fredkin Lab - 命令行测试

import json

import pytest

from cli import build_config, get_check_registry, main, parse_range
from cli.verify import _MIXING_SIZES, CheckModule, VerifyContext
from common.errors import MissingInputError, UsageError
from markov import ChainKind
from reports import read_csv, read_json


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


# ============================================
# 参数与配置
# ============================================

@pytest.mark.parametrize("text,expected", [
    ("2..5", [2, 3, 4, 5]),
    ("3,5,9", [3, 5, 9]),
    ("1..9:2", [1, 3, 5, 7, 9]),
    ("7", [7]),
])
def test_parse_range(text, expected):
    assert parse_range(text) == expected


@pytest.mark.parametrize("text", ["5..2", "a..b", "1..5:0", ""])
def test_parse_range_errors(text):
    with pytest.raises(UsageError):
        parse_range(text)


def test_motzkin_balanced_forced_to_full():
    config = build_config("gap-scan", {"model": "motzkin", "n": "2..3"})
    assert config.sector == "full"


def test_hopping_rejects_even_m():
    with pytest.raises(UsageError):
        build_config("hopping", {"n": "4"})


def test_config_file_merged_with_flags(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"n": "2..4", "s": 2, "mc-n": 100}))
    config = build_config("excursion", {"n": "3", "s": None}, path)
    assert config.n == [3]
    assert config.s == 2
    assert config.mc_n == 100


def test_config_file_missing(tmp_path):
    with pytest.raises(MissingInputError):
        build_config("gap-scan", {}, tmp_path / "none.json")


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"colour": 2}))
    with pytest.raises(UsageError):
        build_config("gap-scan", {}, path)


def test_metadata_excludes_runtime_fields(tmp_path):
    config = build_config("gap-scan", {"output": tmp_path, "workers": 4})
    meta = config.metadata_config()
    assert "output" not in meta
    assert "workers" not in meta
    assert meta["command"] == "gap-scan"


def test_tolerance_override():
    config = build_config("gap-scan", {"tolerances": {"residual": 1e-3}})
    assert config.tolerance("residual") == 1e-3
    assert config.tolerance("row_sum") == 1e-12


def test_registry_covers_every_module():
    modules = {check.module for check in get_check_registry().list_checks()}
    assert modules == set(CheckModule)


def test_induced_lattice_check_covers_all_realizations():
    check = get_check_registry().get("induced_lattice_gap")
    result = check.run(VerifyContext(build_config("verify", {})))
    assert result.passed
    assert result.measured >= 0
    assert any(name in result.detail for name in ("positive_lattice", "idle", "watched"))


@pytest.mark.slow
def test_mixing_bounds_check_covers_every_chain_kind():
    assert set(_MIXING_SIZES) == set(ChainKind)
    check = get_check_registry().get("mixing_time_bounds")
    assert check.run(VerifyContext(build_config("verify", {}))).passed


# ============================================
# 退出码
# ============================================

@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["mixing", "--eps", "0.7"],
    ["mixing", "--chain", "fredkin", "--n", "1"],
    ["gap-scan", "--n", "x"],
    ["gap-scan", "--s", "0"],
    ["hopping", "--n", "6"],
    ["verify", "--only", "nope"],
    ["verify", "--only", "linalg", "--inject-fault", "nope"],
])
def test_usage_errors(tmp_path, argv):
    assert main(argv + ["--output", str(tmp_path)] if argv[0] != "bogus" else argv) == 64


def test_plot_missing_input(tmp_path):
    assert main(["plot", str(tmp_path / "gone.csv"), "--output", str(tmp_path)]) == 66


def test_config_missing_exit_code(tmp_path):
    assert main(["gap-scan", "--config", str(tmp_path / "none.json"), "--output", str(tmp_path)]) == 66


def test_cap_exit_code(tmp_path):
    assert main(["twisted", "--n", "15", "--output", str(tmp_path)]) == 3


# ============================================
# 子命令
# ============================================

def test_gap_scan(capsys, out_dir):
    code, summary = _run(capsys, "gap-scan", "--n", "2..4", "--seed", "3", "--output", str(out_dir))
    assert code == 0
    assert summary["ok"] is True
    assert summary["files"] == ["gap_scan.csv", "gap_scan.json"]

    metadata, frame = read_csv(out_dir / "gap_scan.csv")
    assert metadata["seed"] == 3
    assert len(metadata["config_hash"]) == 16
    assert list(frame.columns) == ["n", "s", "sector", "gap", "lambda_min"]
    assert frame["gap"].iloc[0] == pytest.approx(2.0)
    assert read_json(out_dir / "gap_scan.json")["monotone_decreasing"] is True


def test_gap_scan_full_space(capsys, out_dir):
    code, _ = _run(capsys, "gap-scan", "--sector", "full", "--n", "2..3", "--output", str(out_dir))
    assert code == 0


def test_output_deterministic(tmp_path):
    for name in ("a", "b"):
        assert main(["gap-scan", "--n", "2..4", "--output", str(tmp_path / name)]) == 0
    for file in ("gap_scan.csv", "gap_scan.json"):
        assert (tmp_path / "a" / file).read_bytes() == (tmp_path / "b" / file).read_bytes()


def test_workers_do_not_change_output(tmp_path):
    assert main(["compare-bound", "--n", "2..3", "--output", str(tmp_path / "a")]) == 0
    assert main(["compare-bound", "--n", "2..3", "--workers", "2", "--output", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "compare_bound.csv").read_bytes() == (tmp_path / "b" / "compare_bound.csv").read_bytes()


def test_mixing(capsys, out_dir):
    code, summary = _run(capsys, "mixing", "--n", "2..3", "--eps", "0.25", "--output", str(out_dir))
    assert code == 0
    assert {"mixing_n2.csv", "mixing_n3.csv", "mixing.json"} <= set(summary["files"])
    _, curve = read_csv(out_dir / "mixing_n2.csv")
    assert list(curve.columns[:2]) == ["t", "tv"]


def test_congestion(out_dir):
    assert main(["congestion", "--chain", "hopping_walk", "--n", "5,7", "--output", str(out_dir)]) == 0
    _, frame = read_csv(out_dir / "congestion.csv")
    assert frame["certified"].all()


def test_hopping(out_dir):
    assert main(["hopping", "--n", "5,7,9", "--output", str(out_dir)]) == 0
    _, frame = read_csv(out_dir / "hopping.csv")
    assert frame["kernel_exact"].all()
    assert frame.loc[0, "pinned_amplitude"] == pytest.approx(1 / 3)
    assert "decay_fit" in read_json(out_dir / "hopping.json")


def test_defect(out_dir):
    assert main(["defect", "--n", "3,5", "--output", str(out_dir)]) == 0
    _, frame = read_csv(out_dir / "defect.csv")
    assert frame["zero_modes_eps0"].tolist() == [2, 3]


def test_excursion(capsys, out_dir):
    code, summary = _run(
        capsys, "excursion", "--n", "1..5", "--samples", "2000", "--mc-n", "50", "--output", str(out_dir),
    )
    assert code == 0
    assert set(summary["files"]) == {"density.csv", "areas.csv", "histogram.json", "excursion.json"}
    assert read_json(out_dir / "histogram.json")["samples"] == 2000


def test_twisted(capsys, out_dir):
    code, summary = _run(capsys, "twisted", "--n", "3..6", "--output", str(out_dir))
    assert code == 0
    _, frame = read_csv(out_dir / "twisted.csv")
    assert (frame["residual"] <= 1e-10).all()
    report = read_json(out_dir / "twisted.json")
    assert report["slope_target"] == -1.5
    assert report["slope_ok"] == (report["fit"]["slope"] <= -1.5)
    assert summary["summary"]["slope_ok"] == report["slope_ok"]


@pytest.mark.slow
def test_twisted_slope_reaches_target(out_dir):
    assert main(["twisted", "--n", "6..14", "--output", str(out_dir)]) == 0
    assert read_json(out_dir / "twisted.json")["slope_ok"] is True


def test_entropy(out_dir):
    assert main(["entropy", "--n", "1..3", "--output", str(out_dir)]) == 0
    _, frame = read_csv(out_dir / "entropy.csv")
    assert (frame["motzkin_rank"] == frame["motzkin_rank_expected"]).all()


# ============================================
# verify
# ============================================

def test_verify_linalg(capsys, out_dir):
    code, summary = _run(capsys, "verify", "--only", "linalg,reports", "--output", str(out_dir))
    assert code == 0
    assert summary["files"] == ["verify.json", "verify.md"]
    report = read_json(out_dir / "verify.json")
    assert report["failed"] == 0
    assert report["scope"] == ["linalg", "reports"]
    assert "lanczos_vs_dense" in (out_dir / "verify.md").read_text()


@pytest.mark.slow
def test_verify_flip_sign_fails(capsys, out_dir):
    code, summary = _run(
        capsys, "verify", "--only", "hamiltonian", "--inject-fault", "flip-sign", "--output", str(out_dir),
    )
    assert code == 2
    assert summary["ok"] is False
    assert read_json(out_dir / "verify.json")["failed"] > 0


@pytest.mark.slow
def test_verify_defect(out_dir):
    assert main(["verify", "--only", "defect", "--output", str(out_dir)]) == 0


@pytest.mark.slow
def test_verify_all(out_dir):
    assert main(["verify", "--output", str(out_dir)]) == 0
    assert read_json(out_dir / "verify.json")["failed"] == 0


@pytest.mark.slow
def test_gap_scan_with_plots(out_dir):
    assert main(["gap-scan", "--n", "2..5", "--emit-plots", "--output", str(out_dir)]) == 0
    assert (out_dir / "gap_scan.svg").is_file()
    assert main(["plot", str(out_dir / "gap_scan.csv"), "--output", str(out_dir / "again")]) == 0
    assert (out_dir / "again" / "gap_scan.svg").read_bytes() == (out_dir / "gap_scan.svg").read_bytes()
