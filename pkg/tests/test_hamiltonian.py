# Fredkin Lab - 哈密顿量测试

import math

import numpy as np
import pytest

from combinatorics import Alphabet, catalan, dyck_count, motzkin_count
from common.errors import CapExceededError, InvariantViolation, UsageError
from hamiltonian import (
    ProjectorTerm,
    SectorLabel,
    TermKind,
    block_of,
    build_balanced_sector,
    build_fredkin,
    build_motzkin,
    dyck_entropy_trend,
    dyck_state,
    gap,
    gap_identity,
    half_chain_entropy,
    motzkin_basis,
    motzkin_schmidt_rank,
    motzkin_state,
    sector_decompose,
    to_markov,
)
from linalg import extreme_eigs, quadratic_form


# ============================================
# 投影项
# ============================================

def test_two_ket_term_entries():
    term = ProjectorTerm(TermKind.UP_EXCHANGE, 1, (("u1", "u1", "d1"), ("u1", "d1", "u1")), 2.0)
    local = term.local_matrix(Alphabet(1))
    assert np.allclose(local, local.T)
    assert sorted(np.linalg.eigvalsh(local)[-2:]) == pytest.approx([0.0, 2.0])
    assert term.width == 3


@pytest.mark.parametrize("kets", [
    (),
    (("u1",), ("u1", "d1")),
    (("u1", "d1"), ("u1", "d1")),
])
def test_term_validation(kets):
    with pytest.raises(ValueError):
        ProjectorTerm(TermKind.CROSS, 1, kets)


# ============================================
# 组装与无阻挫
# ============================================

@pytest.mark.parametrize("n,colors", [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2)])
def test_fredkin_frustration_free(n, colors):
    spec = build_fredkin(n, colors)
    assert spec.dim == (2 * colors) ** (2 * n)
    spectrum = extreme_eigs(spec.matrix, k=2)
    assert abs(spectrum.lowest) < 1e-10
    assert spectrum.spacing > 1e-10

    basis, state = dyck_state(n, colors)
    embedded = np.zeros(spec.dim)
    index, found = spec.basis.lookup(basis.codes)
    assert found.all()
    embedded[index] = state
    assert abs(quadratic_form(spec.matrix, embedded)) < 1e-12


@pytest.mark.parametrize("n,colors", [(1, 1), (2, 1), (3, 1), (2, 2)])
def test_motzkin_frustration_free(n, colors):
    spec = build_motzkin(n, colors)
    assert spec.dim == (2 * colors + 1) ** (2 * n)
    basis, state = motzkin_state(n, colors)
    assert basis.dim == motzkin_count(2 * n, colors)
    block = block_of(spec, motzkin_basis(n, colors))
    assert abs(quadratic_form(block, state)) < 1e-12
    assert abs(extreme_eigs(spec.matrix, k=1).lowest) < 1e-10


def test_spin_dimension_cap():
    with pytest.raises(CapExceededError):
        build_fredkin(6, 2, max_dim=10_000)


def test_fredkin_stoquastic():
    assert build_fredkin(3, 2).is_stoquastic()
    assert build_balanced_sector(4, 1).is_stoquastic()


def test_balanced_sector_dimension():
    assert build_balanced_sector(5, 1).dim == catalan(5)
    assert build_balanced_sector(3, 2).dim == dyck_count(6, 2)


def test_balanced_sector_is_block_of_full_space():
    full = build_fredkin(3, 2)
    sector = build_balanced_sector(3, 2)
    block = block_of(full, sector.basis)
    assert np.allclose(block.to_dense(), sector.matrix.to_dense())


# ============================================
# 扇区
# ============================================

def test_sector_decomposition():
    decomposition = sector_decompose(build_fredkin(3, 1))
    assert decomposition.off_block_max == 0.0
    assert decomposition.total_dim == 2**6
    balanced = decomposition.balanced()
    assert balanced.dim == catalan(3)
    assert abs(balanced.lambda_min) < 1e-10
    assert all(block.lambda_min > 1e-10 for block in decomposition.unbalanced())


def test_sector_labels_colored_mismatch():
    decomposition = sector_decompose(build_fredkin(2, 2))
    assert SectorLabel(0, 0, True) in decomposition.blocks
    assert decomposition.balanced().dim == dyck_count(4, 2)


# ============================================
# 映射与能隙
# ============================================

def test_gap_n2():
    spec = build_balanced_sector(2, 1)
    assert gap(spec) == pytest.approx(2.0)
    chain = to_markov(spec)
    assert np.allclose(chain.P.toarray(), [[0.5, 0.5], [0.5, 0.5]])


@pytest.mark.parametrize("n,colors", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (4, 2)])
def test_gap_identity(n, colors):
    result = gap_identity(build_balanced_sector(n, colors))
    assert result.residual <= 1e-9
    assert result.min_diagonal >= 0


def test_gap_decreases_with_n():
    gaps = [gap(build_balanced_sector(n, 1)) for n in range(2, 8)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_to_markov_rejects_unbalanced_without_state():
    with pytest.raises(UsageError):
        to_markov(build_fredkin(2, 1))


def test_to_markov_rejects_large_beta():
    with pytest.raises(InvariantViolation):
        to_markov(build_balanced_sector(3, 1), beta=10.0)


def test_gap_needs_two_states():
    with pytest.raises(UsageError):
        gap(build_balanced_sector(1, 1))


# ============================================
# 纠缠熵
# ============================================

def test_dyck_entropy_small():
    basis, state = dyck_state(1)
    assert half_chain_entropy(state, basis).entropy == pytest.approx(0.0)

    basis, state = dyck_state(2)
    result = half_chain_entropy(state, basis)
    assert result.schmidt_rank == 2
    assert result.entropy == pytest.approx(1.0)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("colors", [1, 2])
def test_motzkin_schmidt_rank(n, colors):
    basis, state = motzkin_state(n, colors)
    assert half_chain_entropy(state, basis).schmidt_rank == motzkin_schmidt_rank(n, colors)


def test_dyck_entropy_grows_logarithmically():
    trend = dyck_entropy_trend(range(2, 8))
    assert all(b > a for a, b in zip(trend.entropy, trend.entropy[1:]))
    assert 0 < trend.slope < 1.5
    assert math.isfinite(trend.intercept)
