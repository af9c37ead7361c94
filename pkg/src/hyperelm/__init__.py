"""Extreme learning machines over multiplication-table-defined hypercomplex
algebras."""

from .algebra import AlgebraSpec, HNumber
from .catalog import ALGEBRA_NAMES, builtin, cayley_dickson, check_properties
from .elm import HyperELM, match_hidden_neurons, split_tanh, tnp
from .realify import (
    HMatrix,
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

__version__ = "0.1.0"

__all__ = [
    "ALGEBRA_NAMES",
    "AlgebraSpec",
    "HMatrix",
    "HNumber",
    "HyperELM",
    "builtin",
    "cayley_dickson",
    "check_properties",
    "frobenius",
    "lstsq",
    "match_hidden_neurons",
    "matmul",
    "phi_left",
    "phi_left_matrix",
    "phi_right",
    "phi_right_matrix",
    "pinv",
    "split_tanh",
    "tnp",
    "varphi",
    "varphi_inv",
    "varphi_matrix",
    "varphi_matrix_inv",
]
