"""Hypercomplex algebras defined by multiplication tables, and scalar arithmetic.

An algebra of dimension ``dim`` is the real vector space spanned by the basis
``{1, i_1, ..., i_{dim-1}}`` together with a bilinear product.  The product is
fixed entirely by the table of unit products ``i_a * i_b``, stored as real
coefficient vectors of length ``dim``.  Everything else (distributivity, the
real unit acting as a two-sided identity) follows from bilinearity.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import (
    AlgebraMismatchError,
    NonFiniteError,
    ShapeMismatchError,
)


class AlgebraSpec:
    """A real hypercomplex algebra fixed by its multiplication table.

    Parameters
    ----------
    name : str
        Label used for display and for identity checks.  Two specs are
        considered the same algebra only if both name and table agree.
    dim : int
        Number of basis elements including the real unit (>= 1).
    table : array-like, shape (dim-1, dim-1, dim)
        ``table[a, b]`` is the coefficient vector of the product
        ``i_{a+1} * i_{b+1}``.  For ``dim == 1`` an empty table is accepted.
    """

    def __init__(self, name, dim, table):
        dim = int(dim)
        if dim < 1:
            raise ShapeMismatchError(f"dim must be >= 1, got {dim}")
        table = np.asarray(table, dtype=float)
        if dim == 1:
            if table.size != 0:
                raise ShapeMismatchError("a 1-dimensional algebra has no table entries")
            table = np.zeros((0, 0, 1))
        elif table.shape != (dim - 1, dim - 1, dim):
            raise ShapeMismatchError(
                f"table shape {table.shape} does not match dim {dim}; "
                f"expected {(dim - 1, dim - 1, dim)}"
            )
        if not np.all(np.isfinite(table)):
            raise NonFiniteError("multiplication table contains NaN/Inf")

        # Structure tensor: units[a, b] is the coefficient vector of e_a * e_b,
        # with e_0 the real unit acting as a two-sided identity.
        units = np.zeros((dim, dim, dim))
        units[0, :, :] = np.eye(dim)
        units[:, 0, :] = np.eye(dim)
        units[1:, 1:, :] = table

        self.name = str(name)
        self.dim = dim
        self.table = table
        self.units = units
        # Matrix representations of left/right multiplication by each basis
        # element; columns follow the canonical-basis convention.
        self.basis_left = np.ascontiguousarray(units.transpose(0, 2, 1))
        self.basis_right = np.ascontiguousarray(units.transpose(1, 2, 0))
        for arr in (self.table, self.units, self.basis_left, self.basis_right):
            arr.setflags(write=False)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (
            self.name == other.name
            and self.dim == other.dim
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.name, self.dim, self.table.tobytes()))

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, dim={self.dim})"

    # -- element constructors ----------------------------------------------

    def zero(self):
        return HNumber(self, np.zeros(self.dim))

    def unit(self, value=1.0):
        """The real number ``value`` embedded in the algebra."""
        coeffs = np.zeros(self.dim)
        coeffs[0] = value
        return HNumber(self, coeffs)

    def basis(self, k):
        """Basis element e_k (k = 0 gives the real unit)."""
        if not 0 <= k < self.dim:
            raise ShapeMismatchError(f"basis index {k} out of range for dim {self.dim}")
        coeffs = np.zeros(self.dim)
        coeffs[k] = 1.0
        return HNumber(self, coeffs)

    def element(self, coeffs):
        return HNumber(self, coeffs)

    # -- serialization ------------------------------------------------------

    def to_dict(self):
        return {"name": self.name, "dim": self.dim, "table": self.table.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(data["name"], data["dim"], data["table"])

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)


def _check_same_algebra(x, y):
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise AlgebraMismatchError(
            f"operands from different algebras: {x.algebra!r} vs {y.algebra!r}"
        )


class HNumber:
    """A hypercomplex scalar: a coefficient vector over an :class:`AlgebraSpec`.

    Immutable; arithmetic goes through the usual operators.  Multiplication
    evaluates the distributive expansion against the algebra's table.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (algebra.dim,):
            raise ShapeMismatchError(
                f"coefficient vector of length {coeffs.shape} for dim {algebra.dim}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise NonFiniteError("coefficients contain NaN/Inf")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HNumber is immutable")

    @property
    def real(self):
        return float(self.coeffs[0])

    def __add__(self, other):
        if not isinstance(other, HNumber):
            return NotImplemented
        _check_same_algebra(self, other)
        return HNumber(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, HNumber):
            return NotImplemented
        _check_same_algebra(self, other)
        return HNumber(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self):
        return HNumber(self.algebra, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, HNumber):
            _check_same_algebra(self, other)
            product = np.einsum(
                "i,j,ijk->k", self.coeffs, other.coeffs, self.algebra.units
            )
            return HNumber(self.algebra, product)
        if isinstance(other, (int, float)):
            return HNumber(self.algebra, float(other) * self.coeffs)
        return NotImplemented

    def __rmul__(self, other):
        # Real scalars commute with everything (scalar product).
        if isinstance(other, (int, float)):
            return HNumber(self.algebra, float(other) * self.coeffs)
        return NotImplemented

    def __abs__(self):
        return float(np.linalg.norm(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, HNumber):
            return NotImplemented
        return self.algebra == other.algebra and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __hash__(self):
        return hash((self.algebra, self.coeffs.tobytes()))

    def __repr__(self):
        return f"HNumber({self.algebra.name}, {self.coeffs.tolist()})"
