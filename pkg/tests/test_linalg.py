import numpy as np
import pytest
from numpy.testing import assert_allclose

from prfeas.linalg import (
    NonSymmetric,
    Singular,
    SingularUpdate,
    certifying_cholesky,
    inverse_with_factorization,
    smw_inverse_update,
    solve_with_factorization,
)


class TestSmwInverseUpdate:
    def test_zero_update_is_identity(self):
        G = np.eye(2)
        out = smw_inverse_update(G, np.zeros(2), 0)
        assert_allclose(out, np.eye(2), atol=0)

    def test_column_replacement_matches_dense_inverse(self):
        # B has columns (1,1) and (-1,1); replace column 2 by (0,1).
        B = np.array([[1.0, -1.0], [1.0, 1.0]])
        G = 0.5 * np.array([[1.0, 1.0], [-1.0, 1.0]])
        assert_allclose(G @ B, np.eye(2), atol=1e-15)
        new_col = np.array([0.0, 1.0])
        u = new_col - B[:, 1]
        B_new = B.copy()
        B_new[:, 1] = new_col
        expected = np.linalg.inv(B_new)
        out = smw_inverse_update(G, u, 1)
        assert_allclose(out, expected, atol=1e-12)
        assert_allclose(out @ B_new, np.eye(2), atol=1e-12)

    def test_replacement_to_singular_matrix_is_rejected(self):
        # Replacing column 2 of [[1,-1],[1,1]] by (1,1) duplicates column 1,
        # so no inverse exists and the update denominator hits zero.
        G = 0.5 * np.array([[1.0, 1.0], [-1.0, 1.0]])
        u = np.array([2.0, 0.0])
        with pytest.raises(SingularUpdate):
            smw_inverse_update(G, u, 1)

    def test_near_singular_update_is_rejected(self):
        G = np.eye(2)
        u = np.array([-1.0 + 1e-14, 0.0])
        with pytest.raises(SingularUpdate):
            smw_inverse_update(G, u, 0)

    @pytest.mark.parametrize("k", [2, 3, 5, 8, 12])
    def test_random_replacements_match_dense_inverse(self, k):
        rng = np.random.default_rng(k)
        for _ in range(40):
            B = rng.standard_normal((k, k)) + 3.0 * np.eye(k)
            G = np.linalg.inv(B)
            j = int(rng.integers(k))
            new_col = rng.standard_normal(k)
            B_new = B.copy()
            B_new[:, j] = new_col
            if abs(np.linalg.det(B_new)) < 1e-6:
                continue
            out = smw_inverse_update(G, new_col - B[:, j], j)
            assert np.max(np.abs(out @ B_new - np.eye(k))) <= 1e-9


class TestCertifyingCholesky:
    def test_identity_is_pd(self):
        res = certifying_cholesky(np.eye(3))
        assert res.is_pd
        assert_allclose(res.factor, np.eye(3), atol=0)

    def test_known_indefinite_matrix_witness(self):
        # pivot 2 of [[1,2],[2,1]] is 1 - 4 = -3, reached along (-2, 1).
        X = np.array([[1.0, 2.0], [2.0, 1.0]])
        res = certifying_cholesky(X)
        assert not res.is_pd
        v = res.witness
        assert_allclose(np.linalg.norm(v), 1.0, atol=1e-14)
        assert_allclose(v / v[1], np.array([-2.0, 1.0]), atol=1e-12)
        assert_allclose(v @ X @ v, -3.0 / 5.0, atol=1e-12)

    def test_diagonal_indefinite_witness(self):
        res = certifying_cholesky(np.diag([1.0, -1.0]))
        assert not res.is_pd
        assert_allclose(res.witness, np.array([0.0, 1.0]), atol=0)

    def test_zero_matrix_is_not_pd(self):
        res = certifying_cholesky(np.zeros((3, 3)))
        assert not res.is_pd
        assert res.witness @ res.witness == pytest.approx(1.0)

    def test_first_pivot_failure(self):
        X = np.array([[-2.0, 0.5], [0.5, 3.0]])
        res = certifying_cholesky(X)
        assert not res.is_pd
        assert_allclose(np.abs(res.witness), np.array([1.0, 0.0]), atol=0)

    def test_non_symmetric_rejected(self):
        with pytest.raises(NonSymmetric):
            certifying_cholesky(np.array([[1.0, 2.0], [0.0, 1.0]]))
        with pytest.raises(NonSymmetric):
            certifying_cholesky(np.ones((2, 3)))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_matches_eigenvalue_check(self, n):
        # decision agrees with a brute-force eigencheck outside a 1e-10 band
        rng = np.random.default_rng(100 + n)
        for _ in range(200):
            B = rng.standard_normal((n, n))
            X = 0.5 * (B + B.T)
            res = certifying_cholesky(X)
            min_eig = np.min(np.linalg.eigvalsh(X))
            scale = max(np.max(np.abs(X)), 1e-30)
            if min_eig > 1e-10 * scale:
                assert res.is_pd
            elif min_eig < -1e-10 * scale:
                assert not res.is_pd
            if res.is_pd:
                assert np.max(np.abs(res.factor @ res.factor.T - X)) \
                    <= 1e-10 * scale
            else:
                v = res.witness
                assert abs(np.linalg.norm(v) - 1.0) <= 1e-12
                assert v @ X @ v <= 1e-12 * scale

    def test_pd_factor_reconstructs(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            B = rng.standard_normal((5, 5))
            X = B @ B.T + 0.5 * np.eye(5)
            res = certifying_cholesky(X)
            assert res.is_pd
            assert np.max(np.abs(res.factor @ res.factor.T - X)) \
                <= 1e-10 * np.max(np.abs(X))


class TestSolveWithFactorization:
    def test_solves_small_system(self):
        B = np.array([[2.0, 1.0], [1.0, 3.0]])
        rhs = np.array([3.0, 5.0])
        x = solve_with_factorization(B, rhs)
        assert np.linalg.norm(B @ x - rhs) <= 1e-10 * np.linalg.norm(rhs)

    def test_singular_matrix_rejected(self):
        B = np.array([[1.0, 2.0], [2.0, 4.0]])
        with pytest.raises(Singular):
            solve_with_factorization(B, np.ones(2))

    def test_inverse_helper(self):
        rng = np.random.default_rng(11)
        B = rng.standard_normal((6, 6)) + 4.0 * np.eye(6)
        G = inverse_with_factorization(B)
        assert np.max(np.abs(G @ B - np.eye(6))) <= 1e-10

    @pytest.mark.parametrize("k", [1, 3, 7])
    def test_random_well_conditioned_residual(self, k):
        rng = np.random.default_rng(200 + k)
        for _ in range(25):
            B = rng.standard_normal((k, k)) + 3.0 * np.eye(k)
            rhs = rng.standard_normal(k)
            x = solve_with_factorization(B, rhs)
            assert np.linalg.norm(B @ x - rhs) \
                <= 1e-10 * max(np.linalg.norm(rhs), 1.0)
