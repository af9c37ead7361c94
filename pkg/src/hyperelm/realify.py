"""Real embeddings of hypercomplex scalars and matrices, and least squares.

Every hypercomplex computation here is carried out with real linear algebra:
``varphi`` flattens coefficients into real columns, ``phi_left``/``phi_right``
turn multiplication by a fixed element into a real matrix, and their block
versions do the same for matrices.  Matrix products pick whichever embedding
is cheaper to materialize, and the least-squares solver reduces to a real
pseudoinverse problem.
"""
from __future__ import annotations

import numpy as np

from .algebra import AlgebraSpec, HNumber, _check_same_algebra
from .errors import ConvergenceFailureError, ShapeMismatchError


# -- scalar embeddings ------------------------------------------------------

def varphi(x: HNumber) -> np.ndarray:
    """Coefficient vector of ``x`` as a real column (length dim)."""
    return np.array(x.coeffs)


def varphi_inv(vec, algebra: AlgebraSpec) -> HNumber:
    return HNumber(algebra, np.asarray(vec, dtype=float).reshape(algebra.dim))


def phi_left(a: HNumber) -> np.ndarray:
    """Real (dim x dim) matrix of left multiplication by ``a``:
    ``varphi(a * x) == phi_left(a) @ varphi(x)`` for every x."""
    return np.tensordot(a.coeffs, a.algebra.basis_left, axes=1)


def phi_right(a: HNumber) -> np.ndarray:
    """Real (dim x dim) matrix of right multiplication by ``a``:
    ``varphi(x * a) == phi_right(a) @ varphi(x)`` for every x."""
    return np.tensordot(a.coeffs, a.algebra.basis_right, axes=1)


# -- matrices ---------------------------------------------------------------

class HMatrix:
    """A matrix with hypercomplex entries, stored as a (rows, cols, dim)
    coefficient array.  Immutable; ``@`` multiplies through the real
    embeddings."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 3 or coeffs.shape[2] != algebra.dim:
            raise ShapeMismatchError(
                f"coefficient array of shape {coeffs.shape} for dim {algebra.dim}; "
                "expected (rows, cols, dim)"
            )
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, algebra, rows, cols):
        return cls(algebra, np.zeros((rows, cols, algebra.dim)))

    @classmethod
    def eye(cls, algebra, n):
        coeffs = np.zeros((n, n, algebra.dim))
        coeffs[np.arange(n), np.arange(n), 0] = 1.0
        return cls(algebra, coeffs)

    @classmethod
    def from_real(cls, algebra, array):
        """Embed a real matrix: entries get the array values as real parts."""
        array = np.asarray(array, dtype=float)
        coeffs = np.zeros(array.shape + (algebra.dim,))
        coeffs[..., 0] = array
        return cls(algebra, coeffs)

    @classmethod
    def from_scalars(cls, scalars):
        """Build from a nested list of HNumber (rows of entries)."""
        algebra = scalars[0][0].algebra
        coeffs = np.array([[x.coeffs for x in row] for row in scalars])
        return cls(algebra, coeffs)

    # -- basic queries -------------------------------------------------------

    @property
    def rows(self):
        return self.coeffs.shape[0]

    @property
    def cols(self):
        return self.coeffs.shape[1]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j) -> HNumber:
        return HNumber(self.algebra, self.coeffs[i, j])

    @property
    def T(self):
        return HMatrix(self.algebra, self.coeffs.transpose(1, 0, 2))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        _check_same_algebra(self, other)
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} + {other.shape}")
        return HMatrix(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_same_algebra(self, other)
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} - {other.shape}")
        return HMatrix(self.algebra, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float)):
            return HMatrix(self.algebra, float(scalar) * self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        return matmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, HMatrix):
            return NotImplemented
        return self.algebra == other.algebra and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __repr__(self):
        return f"HMatrix({self.algebra.name}, shape={self.shape})"


def varphi_matrix(B: HMatrix) -> np.ndarray:
    """Stack ``varphi`` of each entry down block rows: an L x N hypercomplex
    matrix becomes a (dim*L) x N real matrix."""
    L, N, d = B.coeffs.shape
    return B.coeffs.transpose(0, 2, 1).reshape(L * d, N)


def varphi_matrix_inv(R, algebra: AlgebraSpec) -> HMatrix:
    """Reassemble a stacked real matrix into an HMatrix; the row count must be
    divisible by the algebra dimension."""
    R = np.asarray(R, dtype=float)
    d = algebra.dim
    if R.ndim != 2 or R.shape[0] % d != 0:
        raise ShapeMismatchError(
            f"cannot fold a {R.shape} real matrix over dimension {d}"
        )
    L = R.shape[0] // d
    return HMatrix(algebra, R.reshape(L, d, R.shape[1]).transpose(0, 2, 1))


def phi_left_matrix(A: HMatrix) -> np.ndarray:
    """Block matrix with (i, l) block ``phi_left(a_il)``; size
    (dim*M) x (dim*L) for an M x L argument."""
    M, L, d = A.coeffs.shape
    blocks = np.einsum("mlk,kab->mlab", A.coeffs, A.algebra.basis_left)
    return blocks.transpose(0, 2, 1, 3).reshape(M * d, L * d)


def phi_right_matrix(B: HMatrix) -> np.ndarray:
    """Block matrix with block row j, block column l holding
    ``phi_right(b_lj)``; size (dim*N) x (dim*L) for an L x N argument."""
    L, N, d = B.coeffs.shape
    blocks = np.einsum("lnk,kab->nlab", B.coeffs, B.algebra.basis_right)
    return blocks.transpose(0, 2, 1, 3).reshape(N * d, L * d)


def matmul(A: HMatrix, B: HMatrix) -> HMatrix:
    """Hypercomplex matrix product through the cheaper real embedding.

    The left-embedding route folds ``phi_left_matrix(A) @ varphi_matrix(B)``;
    the right-embedding route works on the transposes.  The bottleneck is
    materializing the block matrix, so the route whose embedded operand has
    fewer entries wins; ties go left.
    """
    _check_same_algebra(A, B)
    if A.cols != B.rows:
        raise ShapeMismatchError(f"cannot multiply {A.shape} by {B.shape}")
    if A.rows * A.cols <= B.rows * B.cols:
        return varphi_matrix_inv(phi_left_matrix(A) @ varphi_matrix(B), A.algebra)
    Ct = varphi_matrix_inv(phi_right_matrix(B) @ varphi_matrix(A.T), A.algebra)
    return Ct.T


def frobenius(A: HMatrix) -> float:
    """Frobenius norm: root of the summed squared entry absolute values.
    Coincides with the real Frobenius norm of ``varphi_matrix(A)``."""
    return float(np.linalg.norm(A.coeffs))


def pinv(A, rcond=None) -> np.ndarray:
    """SVD-based Moore-Penrose pseudoinverse of a real matrix.

    Singular values at or below ``rcond * sigma_max`` are zeroed; the default
    ``rcond`` is ``max(rows, cols)`` times machine epsilon.
    """
    A = np.asarray(A, dtype=float)
    if rcond is None:
        rcond = max(A.shape) * np.finfo(float).eps
    try:
        return np.linalg.pinv(A, rcond=rcond)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(str(exc)) from exc


def lstsq(A: HMatrix, B: HMatrix, rcond=None) -> HMatrix:
    """Minimal-Frobenius-norm solution of ``min ||A X - B||_F`` over
    hypercomplex X.

    Always reduces through the left embedding:
    ``X = fold(pinv(phi_left_matrix(A)) @ varphi_matrix(B))``.
    """
    _check_same_algebra(A, B)
    if A.rows != B.rows:
        raise ShapeMismatchError(
            f"A has {A.rows} rows but B has {B.rows}; row counts must match"
        )
    X_r = pinv(phi_left_matrix(A), rcond=rcond) @ varphi_matrix(B)
    return varphi_matrix_inv(X_r, A.algebra)
