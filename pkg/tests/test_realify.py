import numpy as np
import pytest

from hyperelm import (
    ALGEBRA_NAMES,
    HMatrix,
    builtin,
    frobenius,
    lstsq,
    matmul,
    phi_left,
    phi_left_matrix,
    phi_right,
    phi_right_matrix,
    pinv,
    varphi,
    varphi_inv,
    varphi_matrix,
    varphi_matrix_inv,
)
from hyperelm.errors import AlgebraMismatchError, ShapeMismatchError

from conftest import naive_matmul, random_hmatrix


class TestScalarEmbedding:
    def test_varphi_is_the_coefficient_column(self, quaternions):
        x = quaternions.element([1, 2, 3, 4])
        assert np.array_equal(varphi(x), [1, 2, 3, 4])

    def test_round_trip(self, any_algebra, rng):
        x = any_algebra.element(rng.standard_normal(any_algebra.dim))
        assert varphi_inv(varphi(x), any_algebra) == x

    def test_linearity(self, quaternions, rng):
        x = quaternions.element(rng.standard_normal(4))
        y = quaternions.element(rng.standard_normal(4))
        assert np.allclose(varphi(x + y), varphi(x) + varphi(y))


class TestMultiplicationOperators:
    def test_left_by_unit_is_identity(self, any_algebra):
        assert np.array_equal(phi_left(any_algebra.unit()), np.eye(any_algebra.dim))

    def test_left_by_i_in_quaternions(self, quaternions):
        # Columns are varphi(i*1), varphi(i*i), varphi(i*j), varphi(i*k),
        # read off the quaternion table by hand.
        expected = np.array(
            [
                [0, -1, 0, 0],
                [1, 0, 0, 0],
                [0, 0, 0, -1],
                [0, 0, 1, 0],
            ]
        )
        assert np.array_equal(phi_left(quaternions.basis(1)), expected)

    def test_left_equals_right_in_commutative_algebra(self, rng):
        t = builtin("tessarine")
        for _ in range(20):
            a = t.element(rng.standard_normal(4))
            assert np.allclose(phi_left(a), phi_right(a), atol=1e-12)

    @pytest.mark.parametrize("name", ALGEBRA_NAMES)
    def test_homomorphism(self, name, rng):
        spec = builtin(name)
        for _ in range(100):
            a = spec.element(rng.standard_normal(spec.dim))
            x = spec.element(rng.standard_normal(spec.dim))
            assert np.allclose(varphi(a * x), phi_left(a) @ varphi(x), atol=1e-12)
            assert np.allclose(varphi(x * a), phi_right(a) @ varphi(x), atol=1e-12)


class TestBlockEmbeddings:
    def test_single_entry_left_block(self, quaternions, rng):
        a = quaternions.element(rng.standard_normal(4))
        A = HMatrix(quaternions, a.coeffs[None, None])
        assert np.allclose(phi_left_matrix(A), phi_left(a))

    def test_unit_matrix_tiles_identities(self, quaternions):
        A = HMatrix.from_real(quaternions, np.ones((2, 3)))
        blocks = phi_left_matrix(A)
        assert blocks.shape == (8, 12)
        for bi in range(2):
            for bj in range(3):
                block = blocks[4 * bi : 4 * bi + 4, 4 * bj : 4 * bj + 4]
                assert np.array_equal(block, np.eye(4))

    def test_block_2_3_matches_scalar_operator(self, quaternions, rng):
        A = random_hmatrix(quaternions, 3, 4, rng)
        blocks = phi_left_matrix(A)
        block = blocks[4:8, 8:12]  # block row 2, block column 3 (1-based)
        assert np.allclose(block, phi_left(A.entry(1, 2)))

    def test_right_block_layout(self, quaternions, rng):
        B = random_hmatrix(quaternions, 3, 2, rng)
        blocks = phi_right_matrix(B)
        assert blocks.shape == (8, 12)
        # block row j, block column l holds phi_right(b_lj)
        assert np.allclose(blocks[4:8, 0:4], phi_right(B.entry(0, 1)))

    def test_varphi_matrix_single_entry(self, quaternions, rng):
        x = quaternions.element(rng.standard_normal(4))
        X = HMatrix(quaternions, x.coeffs[None, None])
        assert np.array_equal(varphi_matrix(X), varphi(x)[:, None])

    def test_varphi_matrix_round_trip(self, quaternions, rng):
        B = random_hmatrix(quaternions, 5, 3, rng)
        assert varphi_matrix_inv(varphi_matrix(B), quaternions) == B

    def test_varphi_matrix_of_unit_matrix(self, quaternions):
        B = HMatrix.from_real(quaternions, np.ones((2, 2)))
        stacked = varphi_matrix(B)
        assert stacked.shape == (8, 2)
        assert np.array_equal(stacked, np.tile([[1.0], [0], [0], [0]], (2, 2)))

    def test_fold_rejects_indivisible_rows(self, quaternions):
        with pytest.raises(ShapeMismatchError):
            varphi_matrix_inv(np.zeros((6, 2)), quaternions)


class TestMatmul:
    def test_identity(self, quaternions, rng):
        B = random_hmatrix(quaternions, 4, 3, rng)
        assert np.allclose((HMatrix.eye(quaternions, 4) @ B).coeffs, B.coeffs)

    def test_unit_product(self, quaternions):
        i = HMatrix(quaternions, [[[0, 1, 0, 0]]])
        j = HMatrix(quaternions, [[[0, 0, 1, 0]]])
        assert np.allclose((i @ j).coeffs, [[[0, 0, 0, 1]]])

    def test_both_routes_match_naive_sum(self, quaternions, rng):
        A = random_hmatrix(quaternions, 5, 4, rng)
        B = random_hmatrix(quaternions, 4, 3, rng)
        left = varphi_matrix_inv(phi_left_matrix(A) @ varphi_matrix(B), quaternions)
        right = varphi_matrix_inv(
            phi_right_matrix(B) @ varphi_matrix(A.T), quaternions
        ).T
        naive = naive_matmul(A, B)
        assert np.max(np.abs(left.coeffs - naive.coeffs)) < 1e-10
        assert np.max(np.abs(right.coeffs - naive.coeffs)) < 1e-10
        assert np.max(np.abs((A @ B).coeffs - naive.coeffs)) < 1e-10

    def test_block_product_consistency(self, any_algebra, rng):
        for _ in range(3):
            m, l, n = rng.integers(1, 7, size=3)
            A = random_hmatrix(any_algebra, m, l, rng)
            B = random_hmatrix(any_algebra, l, n, rng)
            assert np.allclose(
                varphi_matrix(A @ B),
                phi_left_matrix(A) @ varphi_matrix(B),
                atol=1e-10,
            )

    def test_shape_mismatch(self, quaternions, rng):
        A = random_hmatrix(quaternions, 2, 3, rng)
        B = random_hmatrix(quaternions, 2, 3, rng)
        with pytest.raises(ShapeMismatchError):
            matmul(A, B)

    def test_algebra_mismatch(self, quaternions, rng):
        A = random_hmatrix(quaternions, 2, 2, rng)
        B = random_hmatrix(builtin("klein4"), 2, 2, rng)
        with pytest.raises(AlgebraMismatchError):
            matmul(A, B)


class TestFrobenius:
    def test_zero_matrix(self, quaternions):
        assert frobenius(HMatrix.zeros(quaternions, 3, 2)) == 0.0

    def test_single_entry(self, quaternions):
        assert frobenius(HMatrix(quaternions, [[[1, 1, 1, 1]]])) == 2.0

    def test_matches_embedded_norm(self, any_algebra, rng):
        A = random_hmatrix(any_algebra, 4, 3, rng)
        assert frobenius(A) == pytest.approx(
            np.linalg.norm(varphi_matrix(A)), rel=1e-12
        )


class TestPinv:
    def test_identity(self):
        assert np.allclose(pinv(np.eye(4)), np.eye(4))

    def test_rank_deficient_diagonal(self):
        assert np.allclose(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))

    def test_penrose_identities(self, rng):
        A = rng.standard_normal((12, 7))
        P = pinv(A)
        assert np.allclose(A @ P @ A, A, atol=1e-8)
        assert np.allclose(P @ A @ P, P, atol=1e-8)
        assert np.allclose((A @ P).T, A @ P, atol=1e-8)
        assert np.allclose((P @ A).T, P @ A, atol=1e-8)


class TestLstsq:
    def test_identity_system(self, quaternions, rng):
        B = random_hmatrix(quaternions, 4, 2, rng)
        X = lstsq(HMatrix.eye(quaternions, 4), B)
        assert np.allclose(X.coeffs, B.coeffs, atol=1e-10)

    def test_real_coefficients_match_componentwise_solve(self, quaternions, rng):
        # A square invertible real matrix embedded in the quaternions acts
        # componentwise, so each coefficient layer solves independently.
        A_real = rng.standard_normal((5, 5)) + 5 * np.eye(5)
        A = HMatrix.from_real(quaternions, A_real)
        B = random_hmatrix(quaternions, 5, 2, rng)
        X = lstsq(A, B)
        for layer in range(4):
            expected = np.linalg.solve(A_real, B.coeffs[:, :, layer])
            assert np.allclose(X.coeffs[:, :, layer], expected, atol=1e-9)

    def test_local_minimality(self, quaternions, rng):
        A = random_hmatrix(quaternions, 10, 3, rng)
        B = random_hmatrix(quaternions, 10, 2, rng)
        X = lstsq(A, B)
        base = frobenius(A @ X - B)
        for _ in range(100):
            delta = random_hmatrix(quaternions, 3, 2, rng)
            delta = (1e-3 * frobenius(X) / frobenius(delta)) * delta
            perturbed = frobenius(A @ (X + delta) - B)
            assert perturbed >= base - 1e-9

    def test_residual_bounded_by_zero_solution(self, any_algebra, rng):
        A = random_hmatrix(any_algebra, 6, 4, rng)
        B = random_hmatrix(any_algebra, 6, 2, rng)
        X = lstsq(A, B)
        assert frobenius(A @ X - B) <= frobenius(B) + 1e-12

    def test_row_count_mismatch(self, quaternions, rng):
        A = random_hmatrix(quaternions, 6, 4, rng)
        B = random_hmatrix(quaternions, 5, 2, rng)
        with pytest.raises(ShapeMismatchError):
            lstsq(A, B)
