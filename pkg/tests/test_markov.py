# Fredkin Lab - 马尔可夫链测试

import math

import numpy as np
import pytest

from combinatorics import PathKind, catalan, dyck_count, parse_word
from combinatorics.words import is_valid
from common.errors import CapExceededError, UsageError
from markov import (
    ChainKind,
    InducedMode,
    bfs_paths,
    build_chain,
    chain_diagnostics,
    comparison_constant,
    congestion_rho,
    induced_chain,
    interval_paths,
    mixing_time_bounds,
    peak_displacing_gap_bound,
    relaxation_scaling,
    spectral_gap,
    tv_mixing_curve,
    validate_chain,
    walk_the_peak_paths,
    worst_case_mixing_time,
    worst_start,
)
from markov.analysis import MixingCurve


# ============================================
# 构造与链公理
# ============================================

@pytest.mark.parametrize("kind,n,colors", [
    (ChainKind.FREDKIN, 2, 1),
    (ChainKind.FREDKIN, 4, 1),
    (ChainKind.FREDKIN, 3, 2),
    (ChainKind.PEAK_DISPLACING, 3, 1),
    (ChainKind.PEAK_DISPLACING, 2, 2),
    (ChainKind.LATTICE, 3, 1),
    (ChainKind.POSITIVE_LATTICE, 3, 1),
    (ChainKind.HAMILTONIAN_MAPPED, 3, 1),
])
def test_chain_axioms(kind, n, colors):
    chain = build_chain(kind, n, colors)
    diagnostics = validate_chain(chain)
    assert diagnostics.failures() == []
    assert chain.P.data.min() >= 0


def test_fredkin_chain_sizes():
    assert build_chain(ChainKind.FREDKIN, 4).num_states == catalan(4)
    assert build_chain(ChainKind.FREDKIN, 3, 2).num_states == dyck_count(6, 2)
    assert build_chain(ChainKind.LATTICE, 3).num_states == 20


def test_fredkin_chain_needs_window():
    with pytest.raises(UsageError):
        build_chain(ChainKind.FREDKIN, 1)


def test_chain_state_cap():
    with pytest.raises(CapExceededError):
        build_chain(ChainKind.FREDKIN, 6, max_states=100)


def test_fredkin_n2_transition_matrix():
    chain = build_chain(ChainKind.FREDKIN, 2)
    assert np.allclose(chain.P.toarray(), [[0.75, 0.25], [0.25, 0.75]])
    assert spectral_gap(chain) == pytest.approx(0.5)


def test_peak_displacing_n2_gap():
    chain = build_chain(ChainKind.PEAK_DISPLACING, 2)
    assert spectral_gap(chain) == pytest.approx(4 / 9)


def test_positive_lattice_n2_gap():
    chain = build_chain(ChainKind.POSITIVE_LATTICE, 2)
    assert spectral_gap(chain) == pytest.approx(1 / 3)


def test_diagnostics_flag_broken_chain():
    chain = build_chain(ChainKind.FREDKIN, 2)
    broken = chain.P.copy()
    broken[0, 0] = 0.5
    bad = type(chain)(chain.states, broken, chain.pi, chain.kind, chain.n)
    assert "row_sum" in " ".join(chain_diagnostics(bad).failures())


# ============================================
# 混合
# ============================================

def test_tv_curve_fredkin_n2():
    chain = build_chain(ChainKind.FREDKIN, 2)
    curve = tv_mixing_curve(chain, parse_word("uudd"), t_max=5)
    assert curve.tv[:3] == pytest.approx([0.5, 0.25, 0.125])
    assert curve.mixing_time(0.25) == 1
    assert curve.is_monotone()


def test_mixing_time_none_when_not_reached():
    curve = MixingCurve(0, np.arange(3), np.array([0.9, 0.8, 0.7]))
    assert curve.mixing_time(0.25) is None


def test_worst_case_mixing_fredkin_n2():
    chain = build_chain(ChainKind.FREDKIN, 2)
    assert worst_case_mixing_time(chain, 0.25) == 1


def test_mixing_bounds_hold():
    chain = build_chain(ChainKind.FREDKIN, 4)
    tau = worst_case_mixing_time(chain, 0.25)
    bounds = mixing_time_bounds(chain, eps=0.25, worst_case_tau=tau)
    assert bounds.upper_holds
    assert bounds.lower_holds
    assert bounds.tau_measured <= tau


@pytest.mark.parametrize("kind,n", [
    (ChainKind.FREDKIN, 3),
    (ChainKind.PEAK_DISPLACING, 3),
    (ChainKind.POSITIVE_LATTICE, 4),
    (ChainKind.LATTICE, 2),
    (ChainKind.LATTICE, 4),
    (ChainKind.HAMILTONIAN_MAPPED, 2),
    (ChainKind.HAMILTONIAN_MAPPED, 4),
    (ChainKind.HOPPING_WALK, 5),
    (ChainKind.HOPPING_WALK, 9),
])
def test_mixing_bounds_every_chain_kind(kind, n):
    chain = build_chain(kind, n)
    tau = worst_case_mixing_time(chain, 0.25)
    bounds = mixing_time_bounds(chain, worst_start(chain), 0.25, worst_case_tau=tau)
    assert bounds.upper_holds
    assert bounds.lower_holds is not False


def test_mixing_bounds_eps_range():
    chain = build_chain(ChainKind.FREDKIN, 2)
    with pytest.raises(UsageError):
        mixing_time_bounds(chain, eps=0.5)


def test_relaxation_scaling_reports_ratios():
    result = relaxation_scaling([2, 3, 4], [0.5, 0.2, 0.1])
    assert result.relaxation == pytest.approx([2.0, 5.0, 10.0])
    assert result.ratio_to_reference[0] == pytest.approx(2.0 / (8 * math.log(2)))
    assert result.fit.points == 3


# ============================================
# 比较与拥塞
# ============================================

@pytest.mark.parametrize("n,colors", [(2, 1), (3, 1), (4, 1), (3, 2)])
def test_comparison_bound_certifies_fredkin_gap(n, colors):
    target = build_chain(ChainKind.FREDKIN, n, colors)
    reference = build_chain(ChainKind.PEAK_DISPLACING, n, colors)
    result = comparison_constant(target, reference, walk_the_peak_paths(reference))
    assert result.constant > 0
    assert result.gap_lower_bound(spectral_gap(reference)) <= spectral_gap(target) + 1e-12


def test_peak_displacing_gap_above_bound():
    for n in (2, 3, 4):
        gap = spectral_gap(build_chain(ChainKind.PEAK_DISPLACING, n))
        assert gap >= peak_displacing_gap_bound(n, 1)


def test_comparison_requires_same_states():
    with pytest.raises(UsageError):
        comparison_constant(
            build_chain(ChainKind.FREDKIN, 2),
            build_chain(ChainKind.PEAK_DISPLACING, 3),
            walk_the_peak_paths(build_chain(ChainKind.PEAK_DISPLACING, 3)),
        )


@pytest.mark.parametrize("kind,n", [
    (ChainKind.FREDKIN, 3),
    (ChainKind.POSITIVE_LATTICE, 3),
    (ChainKind.LATTICE, 2),
])
def test_congestion_certifies_gap(kind, n):
    chain = build_chain(kind, n)
    result = congestion_rho(chain, bfs_paths(chain))
    assert result.certifies(spectral_gap(chain))


def test_interval_paths_on_hopping_walk():
    chain = build_chain(ChainKind.HOPPING_WALK, 7)
    result = congestion_rho(chain, interval_paths(chain))
    assert result.max_length == chain.num_states - 1
    assert result.certifies(spectral_gap(chain))


def test_interval_paths_reject_long_jumps():
    chain = build_chain(ChainKind.PEAK_DISPLACING, 3)
    with pytest.raises(UsageError):
        interval_paths(chain)


# ============================================
# 诱导链
# ============================================

@pytest.mark.parametrize("mode", list(InducedMode))
def test_induced_chain_is_valid(mode):
    chain = build_chain(ChainKind.FREDKIN, 3)
    subset = [parse_word(w) for w in ("ududud", "uduudd", "uuddud", "uududd")]
    induced = induced_chain(chain, subset, mode)
    validate_chain(induced)
    assert induced.num_states == 4
    assert induced.label == f"induced:{mode.value}"


@pytest.mark.parametrize("mode", list(InducedMode))
@pytest.mark.parametrize("n", range(1, 7))
def test_induced_dyck_chain_gap_dominates_lattice(n, mode):
    lattice = build_chain(ChainKind.LATTICE, n)
    subset = [i for i, word in enumerate(lattice.states) if is_valid(word.steps, PathKind.DYCK)]
    induced = induced_chain(lattice, subset, mode)
    assert induced.num_states == catalan(n)
    assert spectral_gap(induced) >= spectral_gap(lattice) - 1e-10
    assert spectral_gap(build_chain(ChainKind.POSITIVE_LATTICE, n)) >= spectral_gap(lattice) - 1e-10


@pytest.mark.parametrize("n", range(2, 7))
def test_idle_induced_chain_is_positive_lattice(n):
    lattice = build_chain(ChainKind.LATTICE, n)
    subset = [i for i, word in enumerate(lattice.states) if is_valid(word.steps, PathKind.DYCK)]
    idle = induced_chain(lattice, subset)
    positive = build_chain(ChainKind.POSITIVE_LATTICE, n)
    assert spectral_gap(idle) == pytest.approx(spectral_gap(positive), abs=1e-10)


def test_watched_chain_gap_not_smaller():
    chain = build_chain(ChainKind.FREDKIN, 4)
    subset = list(range(0, chain.num_states, 2))
    induced = induced_chain(chain, subset, InducedMode.WATCHED)
    assert spectral_gap(induced) >= spectral_gap(chain) - 1e-10


def test_induced_chain_empty_subset():
    with pytest.raises(UsageError):
        induced_chain(build_chain(ChainKind.FREDKIN, 2), [])
