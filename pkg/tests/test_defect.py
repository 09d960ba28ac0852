# Fredkin Lab - 单缺陷与跳跃模型测试

import math
from fractions import Fraction

import numpy as np
import pytest

from combinatorics import catalan
from common.errors import CapExceededError, UsageError
from defect import (
    HeffConvention,
    Sublattice,
    analytic_ground_state,
    build_heff,
    build_single_defect,
    defect_basis,
    defect_dimension,
    first_order_check,
    ground_weights,
    heff_decay_fit,
    heff_ground_energy,
    hmove_residual,
    kernel_identity_exact,
    mapped_walk,
    pinned_amplitude,
    walk_bounds,
    zero_mode_count,
)
from linalg import extreme_eigs
from markov import congestion_rho, interval_paths, spectral_gap, validate_chain

ODD_M = [3, 5, 7, 9, 11]

R = 1 / math.sqrt(56)
HEFF_M5 = np.array([
    [15 / 14, 0, -R, 0, 0],
    [0, 0.1, 0, -0.1, 0],
    [-R, 0, 0.5, 0, -R],
    [0, -0.1, 0, 0.1, 0],
    [0, 0, -R, 0, 1 / 14],
])


# ============================================
# 跳跃参数与零能态
# ============================================

def test_heff_m5_entries():
    assert np.allclose(build_heff(5).h_eff, HEFF_M5, atol=1e-15)


@pytest.mark.parametrize("m", [2, 4, 1, -3])
def test_heff_rejects_bad_m(m):
    with pytest.raises(UsageError):
        build_heff(m)


@pytest.mark.parametrize("convention", list(HeffConvention))
@pytest.mark.parametrize("m", ODD_M)
def test_kernel_identity(m, convention):
    spec = build_heff(m, convention=convention)
    assert kernel_identity_exact(spec)
    assert hmove_residual(spec) <= 1e-12


def test_ground_weights_literal():
    weights = ground_weights(5)
    assert sum(weights) == 1
    assert weights == [Fraction(c, 42) for c in (14, 5, 4, 5, 14)]


def test_ground_weights_projected_odd_only():
    weights = ground_weights(7, HeffConvention.PROJECTED)
    assert sum(weights) == 1
    assert all(w == 0 for w in weights[1::2])


def test_analytic_ground_state_normalized():
    g = analytic_ground_state(9, colors=3)
    assert np.linalg.norm(g) == pytest.approx(1.0)
    assert np.all(g > 0)


@pytest.mark.parametrize("m", ODD_M)
def test_heff_positive_definite_on_odd_sublattice(m):
    assert heff_ground_energy(m) > 0
    assert heff_ground_energy(m, convention=HeffConvention.PROJECTED) > 0


def test_pinned_amplitude_m5():
    amplitude = pinned_amplitude(5)
    assert amplitude.derived == Fraction(1, 3)
    assert amplitude.derived == Fraction(catalan(4), catalan(5))
    assert amplitude.stated == Fraction(7, 22)
    assert analytic_ground_state(5)[0] ** 2 == pytest.approx(1 / 3)


def test_heff_decay_fit():
    values, fit = heff_decay_fit([5, 7, 9, 11, 13])
    assert all(v > 0 for v in values)
    assert fit.slope < 0


# ============================================
# 映射随机游走
# ============================================

def test_mapped_walk_m5():
    chain = mapped_walk(5)
    assert list(chain.states) == [1, 3, 5]
    P = chain.P.toarray()
    assert P[0, 1] == pytest.approx(1 / 14)
    assert P[1, 0] == pytest.approx(1 / 4)
    assert P[1, 2] == pytest.approx(1 / 4)
    assert P[2, 1] == pytest.approx(1 / 14)
    assert chain.pi == pytest.approx([14 / 32, 4 / 32, 14 / 32])


@pytest.mark.parametrize("m", ODD_M)
@pytest.mark.parametrize("colors", [1, 2])
def test_walk_transition_bounds(m, colors):
    chain = mapped_walk(m, colors)
    validate_chain(chain)
    bounds = walk_bounds(chain)
    assert bounds.ok


def test_walk_all_sites():
    chain = mapped_walk(7, sublattice=Sublattice.ALL)
    assert chain.num_states == 7
    validate_chain(chain)


@pytest.mark.parametrize("m", ODD_M)
def test_walk_congestion_certifies_gap(m):
    chain = mapped_walk(m)
    result = congestion_rho(chain, interval_paths(chain))
    assert result.certifies(spectral_gap(chain))


# ============================================
# 单缺陷扇区
# ============================================

@pytest.mark.parametrize("m,colors,expected", [(3, 1, 2), (5, 1, 5), (7, 1, 14), (5, 2, 4 * 5)])
def test_defect_dimension(m, colors, expected):
    assert defect_dimension(m, colors) == expected
    assert defect_basis(m, colors).dim == expected


def test_defect_basis_positions_odd():
    sector = defect_basis(7)
    assert set(sector.positions.tolist()) == {1, 3, 5, 7}
    assert np.linalg.norm(sector.omega(3)) == pytest.approx(1.0)
    with pytest.raises(UsageError):
        sector.omega(2)


def test_defect_basis_cap():
    with pytest.raises(CapExceededError):
        defect_basis(9, max_dim=10)


@pytest.mark.parametrize("m", [3, 5, 7])
def test_zero_modes_without_defect_terms(m):
    spec = build_single_defect(m, eps=0.0)
    assert zero_mode_count(spec) == (m + 1) // 2


@pytest.mark.parametrize("m", [3, 5, 7])
def test_defect_lifts_ground_energy(m):
    spec = build_single_defect(m, eps=1.0)
    assert extreme_eigs(spec.matrix, k=1).lowest > 1e-8


def test_negative_eps_rejected():
    with pytest.raises(UsageError):
        build_single_defect(5, eps=-0.1)


def test_first_order_convergence():
    check = first_order_check(5)
    assert check.errors[0] > check.errors[-1]
    assert check.slope >= 0.75
    assert check.ratios[-1] == pytest.approx(check.heff_energy, rel=5e-2)
