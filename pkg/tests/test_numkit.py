"""Unit tests for the foundation numerics."""

import math

import numpy as np
import pytest

from opalg.numkit import (
    DENSE,
    LOWER_TRIANGULAR,
    LOWER_TRIANGULAR_TOEPLITZ,
    CircleGrid,
    ComplexMatrix,
    circle_integral,
    find_root,
    jacobi_svd,
    operator_norm,
    svd_oracle,
    toeplitz_operator_norm,
)


def volterra_matrix(n):
    """Midpoint discretization of integration from 0, used as a workhorse here."""
    h = 1.0 / n
    idx = np.arange(n)[:, None] - np.arange(n)[None, :]
    first = np.full(n, h)
    first[0] = h / 2.0
    return np.where(idx >= 0, first[np.clip(idx, 0, n - 1)], 0.0)


class TestComplexMatrix:
    def test_dense_accepts_anything_square(self):
        m = ComplexMatrix(np.ones((3, 3)), DENSE)
        assert m.dim == 3

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            ComplexMatrix(np.ones((2, 3)))

    def test_lower_triangular_tag_is_checked(self):
        good = np.tril(np.ones((4, 4)))
        ComplexMatrix(good, LOWER_TRIANGULAR)
        bad = good.copy()
        bad[0, 3] = 1e-30
        with pytest.raises(ValueError):
            ComplexMatrix(bad, LOWER_TRIANGULAR)

    def test_toeplitz_tag_is_checked(self):
        ComplexMatrix(volterra_matrix(8), LOWER_TRIANGULAR_TOEPLITZ)
        bad = volterra_matrix(8)
        bad[5, 2] *= 1.5
        with pytest.raises(ValueError):
            ComplexMatrix(bad, LOWER_TRIANGULAR_TOEPLITZ)

    def test_array_interface(self):
        m = ComplexMatrix(np.eye(2))
        assert np.allclose(np.asarray(m), np.eye(2))


class TestOperatorNorm:
    def test_diagonal(self):
        assert operator_norm(np.diag([3.0, 1.0])) == pytest.approx(3.0, abs=1e-12)

    def test_nilpotent_jordan_cell(self):
        a = np.zeros((2, 2))
        a[1, 0] = 1.0
        assert operator_norm(a) == pytest.approx(1.0, abs=1e-12)

    def test_zero_matrix(self):
        assert operator_norm(np.zeros((5, 5))) == 0.0

    def test_volterra_against_oracle(self):
        a = volterra_matrix(64)
        assert abs(operator_norm(a) - svd_oracle(a)) < 1e-9

    def test_scaling_invariance(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        alpha = 2.5 - 1.3j
        na = operator_norm(a)
        assert operator_norm(alpha * a) / abs(alpha) == pytest.approx(na, rel=1e-10)

    def test_column_lower_bound(self):
        rng = np.random.default_rng(6)
        a = rng.standard_normal((10, 10)) + 1j * rng.standard_normal((10, 10))
        na = operator_norm(a)
        for j in range(10):
            assert np.linalg.norm(a[:, j]) <= na + 1e-12

    def test_compression_monotonicity(self):
        a = volterra_matrix(96)
        norms = [operator_norm(a[:n, :n]) for n in (24, 48, 96)]
        assert norms[0] <= norms[1] + 1e-10
        assert norms[1] <= norms[2] + 1e-10

    def test_rejects_nonfinite(self):
        a = np.eye(3)
        a[1, 1] = np.nan
        with pytest.raises(ValueError):
            operator_norm(a)

    def test_rejects_tiny_tol(self):
        with pytest.raises(ValueError):
            operator_norm(np.eye(64), tol=1e-16)


class TestJacobiSvd:
    def test_zero_matrix(self):
        assert svd_oracle(np.zeros((4, 4))) == 0.0

    def test_unitary_diagonal(self):
        lam = np.exp(1j * np.array([0.3, 1.2, -2.0]))
        assert svd_oracle(np.diag(lam)) == pytest.approx(1.0, abs=1e-12)

    def test_agrees_with_power_iteration(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32))
        assert abs(operator_norm(a) - svd_oracle(a)) < 1e-9

    def test_full_spectrum_against_lapack(self):
        rng = np.random.default_rng(8)
        a = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
        sigmas, v = jacobi_svd(a)
        ref = np.linalg.svd(a, compute_uv=False)
        assert np.allclose(sigmas, ref, atol=1e-12)
        # right singular vectors: columns of A@v must be orthogonal
        b = a @ v
        gram = b.conj().T @ b
        assert np.max(np.abs(gram - np.diag(np.diag(gram)))) < 1e-10

    def test_rectangular_tall(self):
        rng = np.random.default_rng(9)
        a = rng.standard_normal((40, 5)) + 1j * rng.standard_normal((40, 5))
        sigmas, _ = jacobi_svd(a)
        ref = np.linalg.svd(a, compute_uv=False)
        assert np.allclose(sigmas, ref, atol=1e-12)

    def test_dimension_guard(self):
        with pytest.raises(ValueError):
            svd_oracle(np.eye(513))


class TestCircleIntegral:
    def test_single_mode(self):
        grid = CircleGrid(4)
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        samples = [(lam, lam * a) for lam in grid.nodes]
        out = circle_integral(samples, 1)
        assert np.max(np.abs(out - a)) < 1e-14

    def test_orthogonality_of_modes(self):
        grid = CircleGrid(8)
        a = np.ones((3, 3))
        samples = [(lam, lam**2 * a) for lam in grid.nodes]
        out = circle_integral(samples, 1)
        assert np.max(np.abs(out)) < 1e-14

    def test_two_mode_sum(self):
        # (1/8) sum (lam + lam^3) lam^{-3} = 0 + 1 by direct DFT orthogonality
        grid = CircleGrid(8)
        a = np.array([[2.0, 0.0], [1.0, -1.0]])
        samples = [(lam, (lam + lam**3) * a) for lam in grid.nodes]
        out = circle_integral(samples, 3)
        assert np.max(np.abs(out - a)) < 1e-14

    def test_band_extraction(self):
        # with M >= 2N the k-th integral of D A D* recovers the k-th band exactly
        rng = np.random.default_rng(11)
        n = 6
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        grid = CircleGrid(2 * n)
        powers = np.arange(n)
        for k in range(n):
            samples = []
            for lam in grid.nodes:
                d = lam**powers
                samples.append((lam, (d[:, None] * a) * d.conj()[None, :]))
            band = np.diag(np.diag(a, -k), -k)
            out = circle_integral(samples, k)
            assert np.max(np.abs(out - band)) < 1e-12

    def test_mismatched_dims(self):
        with pytest.raises(ValueError):
            circle_integral([(1.0, np.eye(2)), (-1.0, np.eye(3))], 1)


class TestFindRoot:
    def test_cosine(self):
        sol = find_root(math.cos, (1.0, 2.0), 1e-12)
        assert sol.root == pytest.approx(math.pi / 2, abs=1e-12)

    def test_beam_equation(self):
        # least positive root of cosh(x)cos(x) + 1, the classic clamped-beam value
        f = lambda x: math.cosh(x) * math.cos(x) + 1.0
        sol = find_root(f, (1.0, 3.0), 1e-12)
        assert sol.root == pytest.approx(1.8751, abs=5e-5)
        assert abs(sol.residual) < 1e-10
        assert sol.lo < sol.root < sol.hi

    def test_linear(self):
        sol = find_root(lambda x: x, (-1.0, 1.0), 1e-12)
        assert sol.root == 0.0
        assert sol.residual == 0.0

    def test_no_sign_change(self):
        with pytest.raises(ValueError):
            find_root(lambda x: 1.0 + x * x, (0.0, 1.0), 1e-10)

    def test_tol_guard(self):
        with pytest.raises(ValueError):
            find_root(math.cos, (1.0, 2.0), 1e-18)

    def test_residual_scaled_bound(self):
        # |f(root)| <= 10*tol*max(1, |f'|) on the suite's bracketing problems
        problems = [
            (math.cos, (1.0, 2.0), 1.0),
            (lambda x: math.cosh(x) * math.cos(x) + 1.0, (1.0, 3.0), 5.0),
            (lambda x: x**3 - 2.0, (1.0, 2.0), 4.0),
        ]
        tol = 1e-12
        for f, bracket, slope in problems:
            sol = find_root(f, bracket, tol)
            assert abs(sol.residual) <= 10.0 * tol * max(1.0, slope)


class TestToeplitzNorm:
    def test_matches_dense(self):
        n = 64
        h = 1.0 / n
        col = np.full(n, h)
        col[0] = h / 2
        dense = volterra_matrix(n)
        assert toeplitz_operator_norm(col, tol=1e-12) == pytest.approx(
            operator_norm(dense), abs=1e-10)

    def test_matches_dense_complex(self):
        rng = np.random.default_rng(13)
        col = rng.standard_normal(48) + 1j * rng.standard_normal(48)
        idx = np.arange(48)[:, None] - np.arange(48)[None, :]
        dense = np.where(idx >= 0, col[np.clip(idx, 0, 47)], 0.0)
        assert toeplitz_operator_norm(col, tol=1e-12) == pytest.approx(
            operator_norm(dense), abs=1e-9)

    def test_zero_column(self):
        assert toeplitz_operator_norm(np.zeros(8)) == 0.0
