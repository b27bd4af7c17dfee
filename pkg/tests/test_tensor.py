import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybx import tensor
from ybx.errors import DimMismatch, NotHermitian


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    a = random_complex(rng, (n, n))
    return 0.5 * (a + a.conj().T)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, (n, n)))
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


# ---------------------------------------------------------------------------
# kron

def test_kron_identity():
    assert np.array_equal(tensor.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_flip_d2():
    p1 = np.array([[0, 1], [1, 0]])
    got = tensor.kron(p1, p1)
    expected = np.zeros((4, 4), dtype=np.int64)
    for i, j in [(0, 3), (1, 2), (2, 1), (3, 0)]:
        expected[i, j] = 1
    assert np.array_equal(got, expected)


def test_kron_dims():
    rng = np.random.default_rng(0)
    a = random_complex(rng, (3, 3))
    b = random_complex(rng, (3, 3))
    assert tensor.kron(a, b).shape == (9, 9)


def test_kron_entry_formula():
    # integer entries keep every product exact, so this pins the index
    # convention without floating-point slack
    rng = np.random.default_rng(1)
    a = rng.integers(-9, 10, (2, 3))
    b = rng.integers(-9, 10, (3, 2))
    got = tensor.kron(a, b)
    for i in range(2):
        for j in range(3):
            for k in range(3):
                for l in range(2):
                    assert got[i * 3 + k, j * 2 + l] == a[i, j] * b[k, l]


def test_kron_associative_exact_on_integer_matrices():
    # products of small integers are exact in floating point, so both
    # groupings must agree bit for bit
    rng = np.random.default_rng(2)
    a = rng.integers(-3, 4, (2, 2))
    b = rng.integers(-3, 4, (3, 3))
    c = rng.integers(-3, 4, (2, 2))
    left = tensor.kron(tensor.kron(a, b), c)
    right = tensor.kron(a, tensor.kron(b, c))
    assert np.array_equal(left, right)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_kron_of_unitaries_is_unitary(seed):
    rng = np.random.default_rng(seed)
    u = random_unitary(rng, 3)
    w = random_unitary(rng, 2)
    assert tensor.unitarity_residual(tensor.kron(u, w)) <= 1e-12


def test_kron_vec():
    a = np.array([1.0, 2.0])
    b = np.array([3.0, 5.0])
    assert np.array_equal(tensor.kron_vec(a, b), [3.0, 5.0, 6.0, 10.0])


# ---------------------------------------------------------------------------
# eigensolver

def test_eigensystem_identity():
    w, v = tensor.hermitian_eigensystem(np.eye(3))
    assert np.allclose(w, [1.0, 1.0, 1.0])
    assert tensor.unitarity_residual(v) <= 1e-10


def test_eigensystem_flip():
    w, _ = tensor.hermitian_eigensystem(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [1.0, -1.0], atol=1e-14)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_eigensystem_reconstructs_random_hermitian(seed):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, 9)
    w, v = tensor.hermitian_eigensystem(h)
    rebuilt = v @ np.diag(w) @ v.conj().T
    assert tensor.max_norm_distance(h, rebuilt) <= 1e-10
    assert tensor.unitarity_residual(v) <= 1e-10
    assert np.all(np.diff(w) <= 1e-12)  # descending
    assert abs(np.sum(w) - np.trace(h).real) <= 1e-10


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_eigensystem_matches_numpy_oracle(seed):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, 7)
    w, _ = tensor.hermitian_eigensystem(h)
    assert np.max(np.abs(w - np.linalg.eigvalsh(h)[::-1])) <= 1e-10


def test_eigensystem_density_matrix_spectrum_in_unit_interval():
    rng = np.random.default_rng(5)
    a = random_complex(rng, (4, 4))
    a /= np.linalg.norm(a)
    rho = a @ a.conj().T
    w, _ = tensor.hermitian_eigensystem(rho)
    assert np.all(w >= -1e-12)
    assert np.all(w <= 1.0 + 1e-12)


def test_eigensystem_handles_rank_deficiency():
    # tiny off-diagonal magnitudes must not overflow the rotation
    v = np.zeros(3, dtype=complex)
    v[0] = 1.0
    rho = np.outer(v, v.conj())
    rho[1, 2] = 1e-320
    rho[2, 1] = 1e-320
    w, _ = tensor.hermitian_eigensystem(rho)
    assert np.all(np.isfinite(w))
    assert np.allclose(w, [1.0, 0.0, 0.0], atol=1e-14)


def test_eigensystem_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        tensor.hermitian_eigensystem(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigensystem_rejects_non_square():
    with pytest.raises(DimMismatch):
        tensor.hermitian_eigensystem(np.zeros((2, 3)))


# ---------------------------------------------------------------------------
# distances and residuals

def test_max_norm_distance_zero_for_identical():
    a = np.arange(6.0).reshape(2, 3)
    assert tensor.max_norm_distance(a, a) == 0.0


def test_max_norm_distance_identity_case():
    assert tensor.max_norm_distance(np.eye(2), 2 * np.eye(2)) == 1.0


def test_max_norm_distance_rejects_shape_mismatch():
    with pytest.raises(DimMismatch):
        tensor.max_norm_distance(np.eye(2), np.eye(3))


def test_unitarity_residual_of_identity():
    assert tensor.unitarity_residual(np.eye(5)) == 0.0


def test_hermiticity_residual():
    assert tensor.hermiticity_residual(np.array([[1.0, 2j], [-2j, 3.0]])) == 0.0
    assert tensor.hermiticity_residual(np.array([[0.0, 1.0], [0.0, 0.0]])) == 1.0


def test_require_finite_rejects_nan():
    with pytest.raises(ValueError):
        tensor.require_finite(np.array([1.0, np.nan]))
    with pytest.raises(ValueError):
        tensor.require_finite(np.array([1.0 + 1j * np.inf]))


# ---------------------------------------------------------------------------
# serialization

def test_matrix_json_round_trip(tmp_path):
    rng = np.random.default_rng(9)
    a = random_complex(rng, (3, 4))
    path = tmp_path / "m.json"
    tensor.save_matrix(path, a)
    assert np.array_equal(tensor.load_matrix(path), a)


def test_matrix_json_schema(tmp_path):
    path = tmp_path / "m.json"
    tensor.save_matrix(path, np.array([[1.0 + 2j]]))
    data = json.loads(path.read_text())
    assert data == {"rows": 1, "cols": 1, "entries": [[1.0, 2.0]]}


def test_vector_json_round_trip(tmp_path):
    rng = np.random.default_rng(10)
    v = random_complex(rng, 5)
    path = tmp_path / "v.json"
    tensor.save_vector(path, v)
    assert np.array_equal(tensor.load_vector(path), v)


def test_load_matrix_rejects_bad_payload(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rows": 2, "cols": 2, "entries": [[1, 0]]}')
    with pytest.raises(ValueError):
        tensor.load_matrix(path)
