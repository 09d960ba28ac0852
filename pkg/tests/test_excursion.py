# Fredkin Lab - 偏移面积与扭曲态测试

import math

import numpy as np
import pytest

from common.errors import CapExceededError, UsageError
from excursion import (
    AREA_SCALE,
    ExcursionDensity,
    airy_zeros,
    area_table,
    default_density,
    default_theta,
    density_f_A,
    exact_scaled_mean,
    exchange_pair_counts,
    excursion_moments,
    mc_scaled_area,
    overlap_with_ground,
    scaled_area,
    twisted_energy,
    twisted_scaling,
    twisted_state,
    variational_check,
)


# ============================================
# Airy 分布
# ============================================

def test_excursion_moments_values():
    mean, std = excursion_moments()
    assert mean == pytest.approx(0.6267, abs=1e-4)
    assert std == pytest.approx(0.1548, abs=1e-4)


def test_airy_zeros():
    zeros = airy_zeros(5)
    assert zeros[0] == pytest.approx(-2.338107410, abs=1e-8)
    assert np.all(np.diff(zeros) < 0)


def test_density_normalization_and_moments():
    density = default_density()
    mean, std = excursion_moments()
    assert density.normalization() == pytest.approx(1.0, abs=1e-6)
    assert density.moment(1) == pytest.approx(mean, abs=1e-4)
    second = density.moment(2)
    assert math.sqrt(second - density.moment(1) ** 2) == pytest.approx(std, abs=1e-4)


def test_density_rejects_non_positive_x():
    with pytest.raises(UsageError):
        density_f_A(0.0)


def test_density_vector_and_scalar_agree():
    density = default_density()
    grid = np.array([0.3, 0.6, 1.0])
    values = density(grid)
    assert values[1] == pytest.approx(density_f_A(0.6))
    assert np.all(values > 0)


def test_char_function_at_zero_is_one():
    value = default_density().char_function(0.0)
    assert value.real == pytest.approx(1.0, abs=1e-6)
    assert value.imag == 0.0


def test_truncation_mismatch_rejected():
    with pytest.raises(UsageError):
        ExcursionDensity(truncation=3, zeros=airy_zeros(2))


# ============================================
# 面积
# ============================================

def test_area_table_closed_form_matches_enumeration():
    table = area_table(range(1, 9), enumerate_up_to=8)
    assert (table["closed_form"] == table["enumerated"]).all()
    assert table.loc[table["n"] == 2, "closed_form"].item() == 6


def test_scaled_area_constant():
    assert AREA_SCALE == pytest.approx(2 * math.sqrt(2))
    assert scaled_area(np.array([AREA_SCALE * 8]), 4)[0] == pytest.approx(1.0)


def test_exact_scaled_mean_approaches_limit():
    mean, _ = excursion_moments()
    errors = [abs(exact_scaled_mean(n) - mean) for n in (10, 100, 1000)]
    assert errors[0] > errors[1] > errors[2]


def test_monte_carlo_moments():
    histogram = mc_scaled_area(2000, samples=20_000, seed=1)
    # 有限 n 的均值偏移约 0.71/√n，与精确期望比较
    assert abs(histogram.mean - histogram.exact_mean) / histogram.exact_mean < 0.01
    assert histogram.std_relative_error < 0.08
    assert int(histogram.counts.sum()) == 20_000
    assert histogram.sup_distance_centered < 0.5


def test_monte_carlo_reproducible():
    a = mc_scaled_area(100, samples=3000, seed=9)
    b = mc_scaled_area(100, samples=3000, seed=9)
    assert a.to_dict() == b.to_dict()


def test_monte_carlo_rejects_bad_arguments():
    with pytest.raises(UsageError):
        mc_scaled_area(0, samples=100)


# ============================================
# 扭曲态
# ============================================

def test_default_theta():
    assert default_theta(4) == pytest.approx(4**-1.5 / math.sqrt(10 / 3 - math.pi))
    with pytest.raises(UsageError):
        default_theta(0)


def test_twisted_state_zero_angle():
    result = twisted_energy(4, theta_tilde=0.0)
    assert result.energy == pytest.approx(0.0, abs=1e-15)
    assert result.overlap_sq == pytest.approx(1.0)


def test_exchange_pairs_n2():
    a, b = exchange_pair_counts(twisted_state(2))
    assert int(a.sum() + b.sum()) == 2


@pytest.mark.parametrize("n,colors", [(2, 1), (3, 1), (5, 1), (7, 1), (3, 2), (4, 2)])
def test_twisted_dual_evaluation(n, colors):
    result = twisted_energy(n, colors, default_theta(n), direct=True)
    assert result.residual <= 1e-10


def test_small_angle_approximation():
    result = twisted_energy(12, theta_tilde=default_theta(12), direct=False)
    assert result.direct is None
    assert result.small_angle == pytest.approx(result.energy, rel=0.1)


def test_overlap_color_independent():
    theta = default_theta(5)
    assert overlap_with_ground(5, 2, theta) == pytest.approx(overlap_with_ground(5, 1, theta))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_variational_bound(n):
    check = variational_check(n)
    assert check.holds
    assert check.overlap_sq < 1


def test_twisted_scaling_slope():
    scaling = twisted_scaling(range(6, 12))
    assert scaling.fit.slope < -1.0
    assert list(scaling.table.columns[:3]) == ["n", "theta_tilde", "energy"]


@pytest.mark.slow
def test_twisted_scaling_up_to_cap():
    scaling = twisted_scaling(range(6, 15))
    assert scaling.fit.slope <= -1.5


def test_twisted_cap():
    with pytest.raises(CapExceededError):
        twisted_state(15)
