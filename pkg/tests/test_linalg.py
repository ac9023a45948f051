import numpy as np
import pytest
import sympy as sp

from cartanflow import linalg


def sympy_eigenvalues(matrix):
    """Exact characteristic-polynomial roots, the small-n oracle."""
    ev = sp.Matrix(matrix.tolist()).eigenvals(multiple=True)
    return np.array(sorted((complex(sp.N(x)) for x in ev), key=lambda z: (z.real, z.imag)))


def test_eigenvalues_rotation_generator():
    ev = linalg.eigenvalues(np.array([[0, 1], [-1, 0]]))
    ok, worst = linalg.pair_spectra(ev, [-1j, 1j], 1e-12)
    assert ok, worst


def test_eigenvalues_identity():
    assert np.allclose(linalg.eigenvalues(np.eye(5)), np.ones(5))


def test_eigenvalues_against_characteristic_polynomial():
    rng = np.random.default_rng(0)
    for _ in range(5):
        a = rng.integers(-3, 4, size=(5, 5))
        ok, worst = linalg.pair_spectra(linalg.eigenvalues(a), sympy_eigenvalues(a), 1e-9)
        assert ok, worst


def test_eigenvalues_trace_identity():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((8, 8))
    ev = linalg.eigenvalues(a)
    assert abs(ev.sum() - np.trace(a)) <= 1e-7 * max(1.0, np.linalg.norm(a))


def test_eigenvalues_rejects_nonfinite():
    with pytest.raises(linalg.LinalgError):
        linalg.eigenvalues(np.array([[np.nan, 0], [0, 1]]))


def test_kernel_dimension_trivial():
    assert linalg.kernel_dimension(np.zeros((4, 4))) == 4
    assert linalg.kernel_dimension(np.eye(4)) == 0


def test_kernel_dimension_c4_vertex_block():
    block = np.array([[1, -1, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -1, 1]])
    # oracle: exact nullspace over the rationals
    assert len(sp.Matrix(block.tolist()).nullspace()) == 1
    assert linalg.kernel_dimension(block) == 1


def test_exact_rank_matches_sympy():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a = rng.integers(-2, 3, size=(6, 6))
        assert linalg.exact_rank(a) == sp.Matrix(a.tolist()).rank()


def test_rank_plus_kernel_is_order_in_exact_mode():
    rng = np.random.default_rng(3)
    a = rng.integers(-2, 3, size=(7, 7))
    assert linalg.rank(a) + linalg.kernel_dimension(a) == 7


def test_pseudo_inverse_invertible_case():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((5, 5)) + 5 * np.eye(5)
    v = rng.standard_normal(5)
    assert np.allclose(linalg.apply_pseudo_inverse(a, v), np.linalg.solve(a, v))


def test_pseudo_inverse_zero_vector():
    assert np.allclose(linalg.apply_pseudo_inverse(np.ones((3, 3)), np.zeros(3)), 0)


def test_pseudo_inverse_k2_dirac_least_squares():
    d = np.array([[0, 0, 0], [0, 0, 0], [-1, 1, 0]])
    dirac = (d + d.T).astype(float)
    v = dirac @ np.array([1.0, 0.0, 0.0])
    x = linalg.apply_pseudo_inverse(dirac, v)
    assert np.linalg.norm(dirac @ x - v) <= 1e-9 * max(1.0, np.linalg.norm(v))
    # minimal norm: solving the normal equations with lstsq oracle
    oracle = np.linalg.pinv(dirac) @ v
    assert np.allclose(x, oracle, atol=1e-10)


def test_matrix_exponential_basics():
    assert np.allclose(linalg.matrix_exponential(np.zeros((3, 3))), np.eye(3))
    diag = np.diag([0.3, -1.2, 2.0])
    assert np.allclose(linalg.matrix_exponential(diag), np.diag(np.exp(np.diag(diag))))


def test_matrix_exponential_rotation():
    t = 0.7
    e = linalg.matrix_exponential(np.array([[0, t], [-t, 0]]))
    expected = np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    assert np.allclose(e, expected, atol=1e-12)


def test_matrix_exponential_inverse_identity():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((6, 6))
    a *= 1.5 / np.linalg.norm(a)
    prod = linalg.matrix_exponential(a) @ linalg.matrix_exponential(-a)
    bound = 1e-10 * np.exp(2 * np.linalg.norm(a))
    assert np.max(np.abs(prod - np.eye(6))) <= bound


def test_matrix_exponential_group_property():
    rng = np.random.default_rng(6)
    a = rng.standard_normal((5, 5))
    a *= 2.0 / np.linalg.norm(a)
    s, t = 0.4, 0.35
    lhs = linalg.matrix_exponential(a * (s + t))
    rhs = linalg.matrix_exponential(a * s) @ linalg.matrix_exponential(a * t)
    assert np.max(np.abs(lhs - rhs)) <= 1e-9


def test_rk4_trivial_cases():
    x = np.arange(9.0).reshape(3, 3)
    assert np.array_equal(linalg.rk4_step(lambda m: 0 * m, x, 0.1), x)
    b = np.zeros((3, 3))
    assert np.array_equal(linalg.rk4_step(lambda m: b @ m - m @ b, x, 0.1), x)


def test_rk4_scalar_linear_is_degree4_taylor():
    h = 0.1
    got = linalg.rk4_step(lambda x: x, np.array(1.0), h)
    expected = 1 + h + h**2 / 2 + h**3 / 6 + h**4 / 24
    assert got == pytest.approx(expected, abs=1e-15)
    assert got == pytest.approx(1.1051708333333332, abs=1e-12)


def test_rk4_fifth_order_local_error():
    lam = -0.8
    exact = lambda h: np.exp(lam * h)
    err = lambda h: abs(linalg.rk4_step(lambda x: lam * x, np.array(1.0), h) - exact(h))
    ratio = err(0.2) / err(0.1)
    assert 25 <= ratio <= 40  # ~2^5


def test_pair_spectra_reports_worst_distance():
    ok, worst = linalg.pair_spectra([1, 2, 3], [1, 2, 3.5], 0.1)
    assert not ok and worst == pytest.approx(0.5)
    ok, worst = linalg.pair_spectra([1j, -1j], [-1j, 1j], 1e-12)
    assert ok and worst == 0.0
