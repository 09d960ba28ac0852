# Fredkin Lab - 不变量检查
"""
verify 子命令的检查注册表

每项检查属于一个模块，返回 (测量值, 容差, 是否通过)。
- --only 按模块过滤
- --inject-fault flip-sign 把 hamiltonian / defect 检查中的矩阵整体取负（负对照）
- 结果写 verify.json 与 verify.md，任何失败使退出码为 2
"""

import dataclasses
import math
import tempfile
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
import pandas as pd
import scipy.sparse as sp
import structlog
from scipy.stats import chisquare

from cli.commands import CommandOutcome
from cli.config import RunConfig
from combinatorics.counting import (
    catalan,
    catalan_convolution,
    dyck_area_closed_form,
    dyck_count,
    motzkin_count,
)
from combinatorics.enumeration import enumerate_codes
from combinatorics.sampling import sample_dyck_shapes
from combinatorics.words import PathKind, is_valid
from common.errors import LabError, UsageError
from defect.hopping import (
    HeffConvention,
    build_heff,
    hmove_residual,
    kernel_identity_exact,
    mapped_walk,
    pinned_amplitude,
    walk_bounds,
)
from defect.single_defect import build_single_defect, first_order_check
from excursion.areas import enumerated_area_sum, mc_scaled_area
from excursion.density import default_density, excursion_moments
from excursion.twisted import (
    DUAL_EVALUATION_TOL,
    SCALING_SLOPE_TARGET,
    default_theta,
    twisted_energy,
    twisted_scaling,
    variational_check,
)
from hamiltonian.builder import HamiltonianSpec, build_balanced_sector, build_fredkin, build_motzkin
from hamiltonian.entropy import dyck_state, half_chain_entropy, motzkin_schmidt_rank, motzkin_state
from hamiltonian.mapping import gap, gap_identity
from hamiltonian.sectors import sector_decompose
from linalg.eigen import Method, extreme_eigs
from linalg.sparse import SparseSymMatrix, quadratic_form
from markov.analysis import (
    mixing_time_bounds,
    peak_displacing_gap_bound,
    spectral_gap,
    tv_mixing_curve,
    worst_case_mixing_time,
    worst_start,
)
from markov.builders import build_chain
from markov.chain import ChainKind, chain_diagnostics
from markov.induced import InducedMode, induced_chain
from markov.paths import comparison_constant, congestion_rho, interval_paths, walk_the_peak_paths
from reports.generator import ReportWriter, RunMetadata

logger = structlog.get_logger()

FLIP_SIGN = "flip-sign"
FAULTS = (FLIP_SIGN,)

# m = 5, s = 1 的 literal H_eff（C₀..C₄ = 1, 1, 2, 5, 14）
_R56 = 1.0 / math.sqrt(56.0)
HEFF_M5 = np.array([
    [15 / 14, 0.0, -_R56, 0.0, 0.0],
    [0.0, 0.1, 0.0, -0.1, 0.0],
    [-_R56, 0.0, 0.5, 0.0, -_R56],
    [0.0, -0.1, 0.0, 0.1, 0.0],
    [0.0, 0.0, -_R56, 0.0, 1 / 14],
])


class CheckModule(str, Enum):
    """检查所属模块"""
    COMBINATORICS = "combinatorics"
    LINALG = "linalg"
    MARKOV = "markov"
    HAMILTONIAN = "hamiltonian"
    DEFECT = "defect"
    EXCURSION = "excursion"
    REPORTS = "reports"


@dataclass(frozen=True)
class Measurement:
    """单项检查的测量结果"""
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckResult:
    """写入 verify.json 的检查记录"""
    check_name: str
    module: CheckModule
    status: str
    measured: Optional[float]
    tolerance: Optional[float]
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "module": self.module.value,
            "status": self.status,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifyContext:
    """检查运行环境"""
    config: RunConfig
    fault: Optional[str] = None

    def dense(self, array: np.ndarray) -> np.ndarray:
        return -array if self.fault == FLIP_SIGN else array

    def spec(self, spec: HamiltonianSpec) -> HamiltonianSpec:
        if self.fault != FLIP_SIGN:
            return spec
        return dataclasses.replace(spec, matrix=spec.matrix.scaled(-1.0))


CheckHandler = Callable[[VerifyContext], Measurement]


@dataclass
class CheckSpec:
    """注册的检查"""
    name: str
    module: CheckModule
    description: str
    handler: CheckHandler

    def run(self, ctx: VerifyContext) -> CheckResult:
        try:
            result = self.handler(ctx)
        except LabError as e:
            logger.warning("检查抛出异常", check=self.name, error=str(e))
            return CheckResult(self.name, self.module, "fail", None, None, f"{type(e).__name__}: {e}")
        status = "pass" if result.passed else "fail"
        detail = result.detail or ("" if result.passed else self.description)
        return CheckResult(self.name, self.module, status, result.measured, result.tolerance, detail)


# ============================================
# combinatorics
# ============================================

def _check_catalan_convolution(ctx: VerifyContext) -> Measurement:
    bad = [m for m in range(1, 21) if catalan_convolution(m) != catalan(m)]
    return Measurement(len(bad), 0, not bad, f"不成立的 m: {bad}" if bad else "")


def _check_path_counts(ctx: VerifyContext) -> Measurement:
    bad = []
    for colors in (1, 2):
        for length in range(0, 13):
            motzkin = enumerate_codes(length, colors, PathKind.MOTZKIN, use_cache=False).size
            if motzkin != motzkin_count(length, colors):
                bad.append(("motzkin", length, colors))
            if length % 2 == 0:
                dyck = enumerate_codes(length, colors, PathKind.DYCK, use_cache=False).size
                if dyck != dyck_count(length, colors):
                    bad.append(("dyck", length, colors))
    return Measurement(len(bad), 0, not bad, str(bad) if bad else "")


def _check_uniform_sampler(ctx: VerifyContext) -> Measurement:
    rng = np.random.default_rng(ctx.config.seed)
    shapes = sample_dyck_shapes(rng, 3, 5000)
    _, counts = np.unique(shapes, axis=0, return_counts=True)
    if counts.size != catalan(3):
        return Measurement(counts.size, catalan(3), False, "样本未覆盖全部 C_3 = 5 条路径")
    p_value = float(chisquare(counts).pvalue)
    return Measurement(p_value, 1e-3, p_value > 1e-3)


# ============================================
# linalg
# ============================================

def _random_symmetric(dim: int, seed: int) -> SparseSymMatrix:
    rng = np.random.default_rng(seed)
    upper = sp.random(dim, dim, density=0.02, random_state=rng, format="csr")
    return SparseSymMatrix.from_scipy(upper + upper.T + sp.diags(rng.standard_normal(dim)))


def _check_lanczos_vs_dense(ctx: VerifyContext) -> Measurement:
    m = _random_symmetric(400, ctx.config.seed)
    lanczos = extreme_eigs(m, k=3, method=Method.LANCZOS, keep_vectors=False).eigenvalues
    dense = np.linalg.eigvalsh(m.to_dense())[:3]
    error = float(np.abs(lanczos - dense).max())
    return Measurement(error, 1e-8, error <= 1e-8)


def _check_quadratic_form(ctx: VerifyContext) -> Measurement:
    m = _random_symmetric(200, ctx.config.seed + 1)
    rng = np.random.default_rng(ctx.config.seed)
    v = rng.standard_normal(200) + 1j * rng.standard_normal(200)
    reference = float(np.vdot(v, m.to_dense() @ v).real)
    error = abs(quadratic_form(m, v) - reference) / max(abs(reference), 1.0)
    return Measurement(error, 1e-12, error <= 1e-12)


# ============================================
# markov
# ============================================

def _check_chain_axioms(ctx: VerifyContext) -> Measurement:
    worst = 0.0
    failed = []
    for kind in (ChainKind.FREDKIN, ChainKind.PEAK_DISPLACING):
        for colors, ns in ((1, range(2, 6)), (2, range(2, 5))):
            for n in ns:
                diagnostics = chain_diagnostics(build_chain(kind, n, colors, validate=False))
                worst = max(worst, diagnostics.row_sum_error)
                if diagnostics.failures():
                    failed.append((kind.value, n, colors, diagnostics.failures()))
    return Measurement(worst, ctx.config.tolerance("row_sum"), not failed, str(failed) if failed else "")


def _check_peak_gap_n2(ctx: VerifyContext) -> Measurement:
    error = abs(spectral_gap(build_chain(ChainKind.PEAK_DISPLACING, 2)) - 4 / 9)
    return Measurement(error, 1e-12, error <= 1e-12)


def _check_fredkin_mixing_n2(ctx: VerifyContext) -> Measurement:
    chain = build_chain(ChainKind.FREDKIN, 2)
    tau = tv_mixing_curve(chain, worst_start(chain), stop_at=0.25).mixing_time(0.25)
    return Measurement(tau if tau is not None else math.nan, 1, tau == 1)


def _check_comparison(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("residual")
    margin = math.inf
    for colors in (1, 2):
        for n in range(2, 6):
            target = build_chain(ChainKind.FREDKIN, n, colors)
            reference = build_chain(ChainKind.PEAK_DISPLACING, n, colors)
            result = comparison_constant(target, reference, walk_the_peak_paths(target))
            margin = min(margin, spectral_gap(target) - result.gap_lower_bound(spectral_gap(reference)))
    return Measurement(margin, -tol, margin >= -tol)


def _check_peak_gap_bound(ctx: VerifyContext) -> Measurement:
    margin = math.inf
    for colors in (1, 2):
        for n in range(2, 6):
            value = spectral_gap(build_chain(ChainKind.PEAK_DISPLACING, n, colors))
            margin = min(margin, value - peak_displacing_gap_bound(n, colors))
    return Measurement(margin, 0.0, margin >= 0.0)


def _check_induced_lattice(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("residual")
    margin = math.inf
    worst = ""
    for n in range(1, 7):
        lattice = build_chain(ChainKind.LATTICE, n)
        base = spectral_gap(lattice)
        subset = [i for i, word in enumerate(lattice.states) if is_valid(word.steps, PathKind.DYCK)]
        realizations = {
            "positive_lattice": build_chain(ChainKind.POSITIVE_LATTICE, n),
            "idle": induced_chain(lattice, subset, InducedMode.IDLE),
            "watched": induced_chain(lattice, subset, InducedMode.WATCHED),
        }
        for name, chain in realizations.items():
            diff = spectral_gap(chain) - base
            if diff < margin:
                margin, worst = diff, f"{name} n={n}"
    return Measurement(margin, -tol, margin >= -tol, worst)


# 每种链的规模范围；hopping_walk 为奇数链长 m
_MIXING_SIZES: dict[ChainKind, range] = {
    ChainKind.FREDKIN: range(2, 7),
    ChainKind.PEAK_DISPLACING: range(2, 7),
    ChainKind.LATTICE: range(2, 6),
    ChainKind.POSITIVE_LATTICE: range(2, 7),
    ChainKind.HAMILTONIAN_MAPPED: range(2, 6),
    ChainKind.HOPPING_WALK: range(5, 10, 2),
}


def _check_mixing_bounds(ctx: VerifyContext) -> Measurement:
    failed = []
    eps = ctx.config.eps
    for kind, sizes in _MIXING_SIZES.items():
        for n in sizes:
            chain = build_chain(kind, n)
            start = worst_start(chain)
            result = mixing_time_bounds(
                chain, start, eps, worst_case_tau=worst_case_mixing_time(chain, eps)
            )
            if not result.upper_holds or result.lower_holds is False:
                failed.append((kind.value, n))
    return Measurement(len(failed), 0, not failed, str(failed) if failed else "")


# ============================================
# hamiltonian
# ============================================

def _embedded(spec: HamiltonianSpec, state: tuple[Any, np.ndarray]) -> np.ndarray:
    basis, amplitudes = state
    index, found = spec.basis.lookup(basis.codes)
    vector = np.zeros(spec.dim)
    vector[index[found]] = amplitudes[found]
    return vector


def _frustration_free(ctx: VerifyContext, builder: Callable[..., HamiltonianSpec],
                      state_fn: Callable[..., tuple[Any, np.ndarray]], sizes: dict[int, range]) -> Measurement:
    tol = ctx.config.tolerance("frustration_free")
    worst = 0.0
    failed = []
    for colors, ns in sizes.items():
        for n in ns:
            spec = ctx.spec(builder(n, colors))
            spectrum = extreme_eigs(spec.matrix, k=2, keep_vectors=False)
            energy = quadratic_form(spec.matrix, _embedded(spec, state_fn(n, colors)))
            worst = max(worst, abs(spectrum.lowest), abs(energy))
            if abs(spectrum.lowest) > tol or abs(energy) > tol or spectrum.spacing <= tol:
                failed.append((n, colors))
    return Measurement(worst, tol, not failed, f"失败的 (n, s): {failed}" if failed else "")


def _check_fredkin_frustration_free(ctx: VerifyContext) -> Measurement:
    return _frustration_free(ctx, build_fredkin, dyck_state, {1: range(1, 9), 2: range(1, 5)})


def _check_motzkin_frustration_free(ctx: VerifyContext) -> Measurement:
    return _frustration_free(ctx, build_motzkin, motzkin_state, {1: range(1, 6), 2: range(1, 4)})


def _check_gap_identity(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("gap_identity")
    worst = 0.0
    for colors, ns in ((1, range(2, 9)), (2, range(2, 7))):
        for n in ns:
            worst = max(worst, gap_identity(ctx.spec(build_balanced_sector(n, colors))).residual)
    return Measurement(worst, tol, worst <= tol)


def _check_gap_n2(ctx: VerifyContext) -> Measurement:
    error = abs(gap(ctx.spec(build_balanced_sector(2, 1))) - 2.0)
    tol = ctx.config.tolerance("gap_identity")
    return Measurement(error, tol, error <= tol)


def _check_unbalanced_sectors(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("frustration_free")
    lowest = math.inf
    for colors, ns in ((1, range(1, 5)), (2, range(1, 4))):
        for n in ns:
            for block in sector_decompose(ctx.spec(build_fredkin(n, colors))).unbalanced():
                lowest = min(lowest, block.lambda_min)
    return Measurement(lowest, tol, lowest > tol)


def _check_stoquastic(ctx: VerifyContext) -> Measurement:
    worst = max(
        ctx.spec(build_fredkin(n, colors)).max_offdiagonal() for n, colors in ((4, 1), (3, 2))
    )
    return Measurement(worst, 0.0, worst <= 0.0)


def _check_motzkin_schmidt_rank(ctx: VerifyContext) -> Measurement:
    bad = []
    for colors in (1, 2):
        for n in range(1, 5):
            basis, state = motzkin_state(n, colors)
            if half_chain_entropy(state, basis).schmidt_rank != motzkin_schmidt_rank(n, colors):
                bad.append((n, colors))
    return Measurement(len(bad), 0, not bad, str(bad) if bad else "")


def _check_dyck_entropy_positive(ctx: VerifyContext) -> Measurement:
    values = []
    for n in range(2, 7):
        basis, state = dyck_state(n)
        values.append(half_chain_entropy(state, basis).entropy)
    increments = float(np.diff(values).min())
    return Measurement(increments, 0.0, increments > 0.0)


# ============================================
# defect
# ============================================

def _odd(lo: int, hi: int) -> range:
    return range(lo, hi + 1, 2)


def _check_kernel_exact(ctx: VerifyContext) -> Measurement:
    bad = [
        (m, c.value)
        for c in HeffConvention
        for m in _odd(3, 51)
        if not kernel_identity_exact(build_heff(m, 1, c))
    ]
    return Measurement(len(bad), 0, not bad, str(bad) if bad else "")


def _check_kernel_float(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("hopping_kernel")
    worst = max(hmove_residual(build_heff(m)) for m in _odd(3, 201))
    return Measurement(worst, tol, worst <= tol)


def _check_heff_m5(ctx: VerifyContext) -> Measurement:
    error = float(np.abs(ctx.dense(build_heff(5, 1).h_eff) - HEFF_M5).max())
    return Measurement(error, 1e-15, error <= 1e-15)


def _check_heff_positive(ctx: VerifyContext) -> Measurement:
    lowest = min(
        float(np.linalg.eigvalsh(ctx.dense(build_heff(m, 1, c).h_eff))[0])
        for c in HeffConvention
        for m in _odd(3, 25)
    )
    return Measurement(lowest, 0.0, lowest > 0.0)


def _check_walk_bounds(ctx: VerifyContext) -> Measurement:
    bad = [(m, s) for s in (1, 2) for m in _odd(3, 51) if not walk_bounds(mapped_walk(m, s)).ok]
    return Measurement(len(bad), 0, not bad, str(bad) if bad else "")


def _check_walk_congestion(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("residual")
    margin = math.inf
    for m in _odd(3, 51):
        walk = mapped_walk(m)
        result = congestion_rho(walk, interval_paths(walk))
        margin = min(margin, spectral_gap(walk) - result.gap_lower_bound)
    return Measurement(margin, -tol, margin >= -tol)


def _check_zero_modes(ctx: VerifyContext) -> Measurement:
    tol = ctx.config.tolerance("frustration_free")
    failed = []
    for m in (3, 5, 7):
        values = np.linalg.eigvalsh(ctx.spec(build_single_defect(m, 1, 0.0)).matrix.to_dense())
        count = int(np.sum(np.abs(values) <= tol))
        if values[0] < -tol or count != (m + 1) // 2:
            failed.append((m, count))
    return Measurement(len(failed), 0, not failed, f"(m, 零模数): {failed}" if failed else "")


def _check_first_order(ctx: VerifyContext) -> Measurement:
    slopes = [first_order_check(m, 1).slope for m in (5, 7)]
    worst = min(slopes)
    return Measurement(worst, 0.75, worst >= 0.75, "" if worst >= 0.75 else f"斜率 {slopes}")


def _check_pinned_amplitude(ctx: VerifyContext) -> Measurement:
    value = pinned_amplitude(5).derived
    return Measurement(float(value), 1 / 3, value == Fraction(catalan(4), catalan(5)))


# ============================================
# excursion
# ============================================

def _check_density_normalization(ctx: VerifyContext) -> Measurement:
    error = abs(default_density().normalization() - 1.0)
    return Measurement(error, 1e-6, error <= 1e-6)


def _check_density_mean(ctx: VerifyContext) -> Measurement:
    error = abs(default_density().moment(1) - excursion_moments()[0])
    return Measurement(error, 1e-4, error <= 1e-4)


def _check_density_std(ctx: VerifyContext) -> Measurement:
    density = default_density()
    std = math.sqrt(density.moment(2) - density.moment(1) ** 2)
    error = abs(std - excursion_moments()[1])
    return Measurement(error, 1e-4, error <= 1e-4)


def _check_area_closed_form(ctx: VerifyContext) -> Measurement:
    bad = [n for n in range(1, 13) if enumerated_area_sum(n) != dyck_area_closed_form(n)]
    return Measurement(len(bad), 0, not bad, str(bad) if bad else "")


def _check_monte_carlo(ctx: VerifyContext) -> Measurement:
    config = ctx.config
    histogram = mc_scaled_area(config.mc_n, 1, config.samples, config.seed, workers=config.workers)
    passed = histogram.mean_relative_error <= 0.02 and histogram.std_relative_error <= 0.05
    detail = f"均值相对误差 {histogram.mean_relative_error:.4g}, 标准差相对误差 {histogram.std_relative_error:.4g}"
    return Measurement(histogram.mean_relative_error, 0.02, passed, "" if passed else detail)


def _check_twisted_dual(ctx: VerifyContext) -> Measurement:
    worst = 0.0
    for colors, ns in ((1, range(1, 11)), (2, range(1, 9))):
        for n in ns:
            result = twisted_energy(n, colors, default_theta(n), direct=True)
            worst = max(worst, result.residual or 0.0)
    return Measurement(worst, DUAL_EVALUATION_TOL, worst <= DUAL_EVALUATION_TOL)


def _check_twisted_scaling(ctx: VerifyContext) -> Measurement:
    slope = twisted_scaling(range(6, 15)).fit.slope
    return Measurement(slope, SCALING_SLOPE_TARGET, slope <= SCALING_SLOPE_TARGET)


def _check_variational(ctx: VerifyContext) -> Measurement:
    failed = [n for n in range(2, 9) if not variational_check(n).holds]
    return Measurement(len(failed), 0, not failed, str(failed) if failed else "")


# ============================================
# reports
# ============================================

def _check_deterministic_output(ctx: VerifyContext) -> Measurement:
    frame = pd.DataFrame({"n": [2, 3, 4], "gap": [2.0, 1 / 3, math.pi / 10]})
    payload = {"fit": {"slope": -2.0000000000000004}, "values": np.linspace(0, 1, 7)}
    digests = []
    with tempfile.TemporaryDirectory() as root:
        for run in ("a", "b"):
            writer = ReportWriter(Path(root) / run, RunMetadata(ctx.config.metadata_config(), ctx.config.seed))
            csv_path = writer.write_csv("frame.csv", frame)
            json_path = writer.write_json("payload.json", payload)
            digests.append(csv_path.read_bytes() + json_path.read_bytes())
    same = digests[0] == digests[1]
    return Measurement(0 if same else 1, 0, same)


# ============================================
# 注册表
# ============================================

class CheckRegistry:
    """检查注册表"""

    def __init__(self) -> None:
        self._checks: dict[str, CheckSpec] = {}
        self._register_all_checks()

    def _register_all_checks(self) -> None:
        C = CheckModule
        # ============================================
        # combinatorics
        # ============================================
        self.register("catalan_convolution", C.COMBINATORICS, "Σ C_{j−1}C_{m−j} = C_m", _check_catalan_convolution)
        self.register("path_counts", C.COMBINATORICS, "枚举数与计数公式一致", _check_path_counts)
        self.register("uniform_sampler", C.COMBINATORICS, "Dyck 采样均匀", _check_uniform_sampler)
        # ============================================
        # linalg
        # ============================================
        self.register("lanczos_vs_dense", C.LINALG, "Lanczos 与稠密求解一致", _check_lanczos_vs_dense)
        self.register("quadratic_form", C.LINALG, "复向量二次型", _check_quadratic_form)
        # ============================================
        # markov
        # ============================================
        self.register("chain_axioms", C.MARKOV, "行随机、平稳、细致平衡", _check_chain_axioms)
        self.register("peak_gap_n2", C.MARKOV, "n=2 峰位移链谱隙 4/9", _check_peak_gap_n2)
        self.register("fredkin_mixing_n2", C.MARKOV, "n=2 Fredkin 链 τ(1/4) = 1", _check_fredkin_mixing_n2)
        self.register("comparison_bound", C.MARKOV, "gap(Fredkin) ≥ gap(峰位移)/A", _check_comparison)
        self.register("peak_gap_bound", C.MARKOV, "峰位移谱隙 ≥ s/(√π n^5.5)", _check_peak_gap_bound)
        self.register("induced_lattice_gap", C.MARKOV, "诱导链谱隙不小于原链", _check_induced_lattice)
        self.register("mixing_time_bounds", C.MARKOV, "τ(ε) 落在谱界之内", _check_mixing_bounds)
        # ============================================
        # hamiltonian
        # ============================================
        self.register("fredkin_frustration_free", C.HAMILTONIAN, "λ_min = 0 且基态唯一",
                      _check_fredkin_frustration_free)
        self.register("motzkin_frustration_free", C.HAMILTONIAN, "λ_min = 0 且基态唯一",
                      _check_motzkin_frustration_free)
        self.register("gap_identity", C.HAMILTONIAN, "Δ(H) = 2s(n−1)(1−λ₂)", _check_gap_identity)
        self.register("gap_n2", C.HAMILTONIAN, "n=2 平衡扇区 Δ = 2", _check_gap_n2)
        self.register("unbalanced_sectors", C.HAMILTONIAN, "不平衡扇区 λ_min > 0", _check_unbalanced_sectors)
        self.register("stoquastic", C.HAMILTONIAN, "非对角元非正", _check_stoquastic)
        self.register("motzkin_schmidt_rank", C.HAMILTONIAN, "Motzkin Schmidt 秩", _check_motzkin_schmidt_rank)
        self.register("dyck_entropy_growth", C.HAMILTONIAN, "Dyck 熵随 n 增长", _check_dyck_entropy_positive)
        # ============================================
        # defect
        # ============================================
        self.register("hopping_kernel_exact", C.DEFECT, "H_move·g = 0（有理数）", _check_kernel_exact)
        self.register("hopping_kernel_float", C.DEFECT, "‖H_move·g‖ ≤ 1e-12", _check_kernel_float)
        self.register("heff_m5_display", C.DEFECT, "m=5 H_eff 逐元一致", _check_heff_m5)
        self.register("heff_positive", C.DEFECT, "H_eff 正定", _check_heff_positive)
        self.register("walk_bounds", C.DEFECT, "1/(32s) ≤ P ≤ 1/(2s)", _check_walk_bounds)
        self.register("walk_congestion", C.DEFECT, "1 − λ₂ ≥ 1/(ρL)", _check_walk_congestion)
        self.register("defect_zero_modes", C.DEFECT, "ε=0 零模数 (m+1)/2", _check_zero_modes)
        self.register("first_order", C.DEFECT, "一阶微扰线性收敛", _check_first_order)
        self.register("pinned_amplitude", C.DEFECT, "m=5 钉扎振幅 1/3", _check_pinned_amplitude)
        # ============================================
        # excursion
        # ============================================
        self.register("density_normalization", C.EXCURSION, "∫f_A = 1", _check_density_normalization)
        self.register("density_mean", C.EXCURSION, "均值 (1/2)√(π/2)", _check_density_mean)
        self.register("density_std", C.EXCURSION, "标准差 √(5/12 − π/8)", _check_density_std)
        self.register("area_closed_form", C.EXCURSION, "面积和闭式", _check_area_closed_form)
        self.register("scaled_area_monte_carlo", C.EXCURSION, "缩放面积矩", _check_monte_carlo)
        self.register("twisted_dual_evaluation", C.EXCURSION, "两种能量算法一致", _check_twisted_dual)
        self.register("twisted_scaling", C.EXCURSION, "能量 log-log 斜率 ≤ −1.5", _check_twisted_scaling)
        self.register("variational_bound", C.EXCURSION, "E ≥ Δ·(1 − |⟨φ|ψ⟩|²)", _check_variational)
        # ============================================
        # reports
        # ============================================
        self.register("deterministic_output", C.REPORTS, "输出逐字节确定", _check_deterministic_output)

        logger.debug("检查注册完成", check_count=len(self._checks))

    def register(self, name: str, module: CheckModule, description: str, handler: CheckHandler) -> None:
        """注册检查"""
        self._checks[name] = CheckSpec(name, module, description, handler)

    def get(self, name: str) -> Optional[CheckSpec]:
        return self._checks.get(name)

    def list_checks(self, modules: Optional[list[CheckModule]] = None) -> list[CheckSpec]:
        """按注册顺序列出检查"""
        checks = list(self._checks.values())
        if modules:
            checks = [c for c in checks if c.module in modules]
        return checks


_registry: Optional[CheckRegistry] = None


def get_check_registry() -> CheckRegistry:
    """获取检查注册表单例"""
    global _registry
    if _registry is None:
        _registry = CheckRegistry()
    return _registry


# ============================================
# 运行
# ============================================

@dataclass
class VerifyReport:
    """verify 汇总"""
    scope: list[str]
    results: list[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "scope": self.scope,
            "passed": len(self.results) - len(self.failures),
            "failed": len(self.failures),
            "total": len(self.results),
            "checks": [r.to_dict() for r in self.results],
        }


def parse_modules(names: list[str]) -> list[CheckModule]:
    """解析 --only

    Raises:
        UsageError: 未知模块
    """
    try:
        return [CheckModule(name) for name in names]
    except ValueError as e:
        known = ", ".join(m.value for m in CheckModule)
        raise UsageError("未知检查模块", only=",".join(names), known=known) from e


def run_checks(config: RunConfig) -> VerifyReport:
    """运行选中的检查"""
    if config.inject_fault is not None and config.inject_fault not in FAULTS:
        raise UsageError("未知故障注入", fault=config.inject_fault, known=",".join(FAULTS))
    modules = parse_modules(config.only)
    ctx = VerifyContext(config, config.inject_fault)
    checks = get_check_registry().list_checks(modules)
    report = VerifyReport([m.value for m in modules] or ["all"])
    for check in checks:
        result = check.run(ctx)
        logger.info("检查完成", check=check.name, module=check.module.value, status=result.status)
        report.results.append(result)
    return report


def run_verify(config: RunConfig, writer: ReportWriter) -> CommandOutcome:
    """verify 子命令: verify.json + verify.md"""
    report = run_checks(config)
    summary = report.to_dict()
    writer.write_json("verify.json", summary)
    writer.render(
        "verify_report.md.j2",
        "verify.md",
        scope=", ".join(report.scope),
        passed=summary["passed"],
        failed=summary["failed"],
        total=summary["total"],
        checks=summary["checks"],
        failures=[r.to_dict() for r in report.failures],
    )
    return CommandOutcome(
        files=list(writer.written),
        failures=[f"{r.check_name}: {r.detail}" for r in report.failures],
        summary={k: summary[k] for k in ("passed", "failed", "total")},
    )
