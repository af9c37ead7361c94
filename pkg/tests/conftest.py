import numpy as np
import pytest

from hyperelm import ALGEBRA_NAMES, HMatrix, builtin


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def quaternions():
    return builtin("quaternion")


@pytest.fixture(params=ALGEBRA_NAMES)
def any_algebra(request):
    return builtin(request.param)


def naive_matmul(A, B):
    """Entrywise sum-of-products oracle, independent of the embedding route."""
    out = np.zeros((A.rows, B.cols, A.algebra.dim))
    for i in range(A.rows):
        for j in range(B.cols):
            acc = A.algebra.zero()
            for l in range(A.cols):
                acc = acc + A.entry(i, l) * B.entry(l, j)
            out[i, j] = acc.coeffs
    return HMatrix(A.algebra, out)


def random_hmatrix(algebra, rows, cols, rng, scale=1.0):
    return HMatrix(algebra, scale * rng.standard_normal((rows, cols, algebra.dim)))
