# Fredkin Lab - 线性代数测试

import numpy as np
import pytest
import scipy.sparse as sp

from common.errors import DimensionMismatchError, InvariantViolation
from linalg import Method, SparseSymMatrix, Which, extreme_eigs, matvec, quadratic_form


def _path_laplacian(size: int) -> SparseSymMatrix:
    main = np.full(size, 2.0)
    off = np.full(size - 1, -1.0)
    return SparseSymMatrix(sp.diags([off, main, off], [-1, 0, 1], format="csr"))


def test_from_upper_symmetrizes():
    m = SparseSymMatrix.from_upper(3, np.array([0, 0, 1]), np.array([0, 2, 1]), np.array([1.0, 0.5, 2.0]))
    dense = m.to_dense()
    assert np.array_equal(dense, dense.T)
    assert dense[2, 0] == 0.5
    assert m.nnz_upper == 3


def test_duplicates_are_summed():
    m = SparseSymMatrix.from_triples(2, np.array([0, 0, 1]), np.array([0, 0, 1]), np.array([1.0, 2.0, 4.0]))
    assert m.diagonal().tolist() == [3.0, 4.0]


def test_rejects_asymmetric():
    with pytest.raises(InvariantViolation):
        SparseSymMatrix.from_dense(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_matvec_dimension_mismatch():
    m = _path_laplacian(4)
    with pytest.raises(DimensionMismatchError):
        matvec(m, np.ones(3))


def test_dump_format(tmp_path):
    m = SparseSymMatrix.from_dense(np.array([[1.0, -0.5], [-0.5, 0.0]]))
    text = m.dump(tmp_path / "m.txt").read_text().splitlines()
    assert text[0] == "2 2"
    assert text[1:] == ["0 0 1", "0 1 -0.5"]


def test_quadratic_form_complex_vector():
    m = _path_laplacian(6)
    rng = np.random.default_rng(1)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    v /= np.linalg.norm(v)
    expected = float(np.real(np.conj(v) @ m.to_dense() @ v))
    assert quadratic_form(m, v) == pytest.approx(expected, abs=1e-12)


def test_quadratic_form_requires_unit_vector():
    with pytest.raises(ValueError):
        quadratic_form(_path_laplacian(3), np.ones(3))


def test_lanczos_agrees_with_dense():
    m = _path_laplacian(300)
    dense = extreme_eigs(m, k=4, method=Method.DENSE)
    lanczos = extreme_eigs(m, k=4, method=Method.LANCZOS)
    assert lanczos.method is Method.LANCZOS
    assert np.allclose(lanczos.eigenvalues, dense.eigenvalues, atol=1e-9)


def test_extreme_eigs_largest_and_spacing():
    m = _path_laplacian(10)
    exact = np.sort(2 - 2 * np.cos(np.pi * np.arange(1, 11) / 11))
    low = extreme_eigs(m, k=2)
    high = extreme_eigs(m, k=2, which=Which.LARGEST)
    assert low.eigenvalues == pytest.approx(exact[:2])
    assert high.highest == pytest.approx(exact[-1])
    assert low.spacing == pytest.approx(exact[1] - exact[0])
    assert np.all(low.residuals <= low.tolerance)


def test_extreme_eigs_bad_k():
    with pytest.raises(ValueError):
        extreme_eigs(_path_laplacian(3), k=4)
