"""Hypercomplex-valued extreme learning machines.

A single hidden layer with random, fixed weights feeds a linear output layer
fitted by least squares.  The estimator follows scikit-learn conventions:
hyperparameters live in ``__init__`` and round-trip through ``get_params`` /
``set_params``, fitted state lands in trailing-underscore attributes, and
``fit`` returns ``self``.
"""
from __future__ import annotations

import json

import numpy as np

from .algebra import AlgebraSpec, HNumber
from .errors import (
    AlgebraMismatchError,
    FormatError,
    NotTrainedError,
    ShapeMismatchError,
    UnknownAlgebraError,
)
from .realify import HMatrix, lstsq, matmul
from . import catalog


def split_tanh(x):
    """Hyperbolic tangent applied independently to every coefficient."""
    if isinstance(x, HNumber):
        return HNumber(x.algebra, np.tanh(x.coeffs))
    if isinstance(x, HMatrix):
        return HMatrix(x.algebra, np.tanh(x.coeffs))
    return np.tanh(x)


ACTIVATIONS = {"split_tanh": split_tanh}


def tnp(input_dim, hidden_neurons, output_dim, algebra_dim=1):
    """Total number of parameters, random fixed ones included: the per-entry
    count (D+1)L + (L+1)O times the algebra dimension."""
    return algebra_dim * (
        (input_dim + 1) * hidden_neurons + (hidden_neurons + 1) * output_dim
    )


def match_hidden_neurons(
    l_hyper,
    input_dim=3,
    output_dim=1,
    algebra_dim=4,
    real_input_dim=None,
    real_output_dim=None,
):
    """Hidden layer size for a real network whose parameter count matches a
    hypercomplex one with ``l_hyper`` neurons.

    By default the real network consumes the flattened coefficients, so its
    input/output widths are ``(algebra_dim - 1)`` times the hypercomplex ones
    (the standard time-series encoding).  Solves the parameter-count equality
    for the real hidden size and rounds to the nearest integer.
    """
    if real_input_dim is None:
        real_input_dim = (algebra_dim - 1) * input_dim
    if real_output_dim is None:
        real_output_dim = (algebra_dim - 1) * output_dim
    target = tnp(input_dim, l_hyper, output_dim, algebra_dim)
    l_real = (target - real_output_dim) / (real_input_dim + 1 + real_output_dim)
    return int(np.floor(l_real + 0.5))


def _augment_ones(X: HMatrix) -> HMatrix:
    """Append a column of real units (bias input)."""
    ones = np.zeros((X.rows, 1, X.algebra.dim))
    ones[:, 0, 0] = 1.0
    return HMatrix(X.algebra, np.concatenate([X.coeffs, ones], axis=1))


class HyperELM:
    """Extreme learning machine over a table-defined hypercomplex algebra.

    Parameters
    ----------
    algebra : AlgebraSpec
        The algebra parameters, inputs, and outputs live in.
    hidden_neurons : int
        Width L of the random hidden layer.
    alpha : float or None
        Scaling of the N(0,1) hidden weights.  ``None`` resolves to
        ``10 / input_dim`` when the input width becomes known.
    activation : str
        Name in :data:`ACTIVATIONS`; only ``"split_tanh"`` ships.
    seed : int
        Seeds a PCG64 generator (``numpy.random.default_rng``); every
        coefficient of the hidden weights, bias row included, is drawn i.i.d.
        N(0,1) and scaled by alpha.  Identical seeds give identical models.

    Fitted attributes: ``weights_`` ((D+1) x L, last row the hidden bias),
    ``output_weights_`` ((L+1) x O, last row the output bias), ``input_dim_``,
    ``output_dim_``, ``alpha_``.
    """

    _PARAM_NAMES = ("algebra", "hidden_neurons", "alpha", "activation", "seed")

    def __init__(self, algebra, hidden_neurons, alpha=None, activation="split_tanh", seed=0):
        self.algebra = algebra
        self.hidden_neurons = hidden_neurons
        self.alpha = alpha
        self.activation = activation
        self.seed = seed

    # -- scikit-learn plumbing ----------------------------------------------

    def get_params(self, deep=True):
        return {name: getattr(self, name) for name in self._PARAM_NAMES}

    def set_params(self, **params):
        for name, value in params.items():
            if name not in self._PARAM_NAMES:
                raise ValueError(f"unknown parameter {name!r}")
            setattr(self, name, value)
        return self

    # -- model construction --------------------------------------------------

    def _resolve_alpha(self, input_dim):
        return 10.0 / input_dim if self.alpha is None else float(self.alpha)

    def initialize(self, input_dim):
        """Draw the hidden weights for inputs of width ``input_dim``.

        The weights are fixed from here on; calling ``fit`` afterwards only
        solves for the output layer.
        """
        if input_dim < 1 or self.hidden_neurons < 1:
            raise ShapeMismatchError("input_dim and hidden_neurons must be >= 1")
        alpha = self._resolve_alpha(input_dim)
        rng = np.random.default_rng(self.seed)
        coeffs = alpha * rng.standard_normal(
            (input_dim + 1, self.hidden_neurons, self.algebra.dim)
        )
        self.weights_ = HMatrix(self.algebra, coeffs)
        self.input_dim_ = input_dim
        self.alpha_ = alpha
        return self

    def _check_input(self, X):
        if not isinstance(X, HMatrix):
            raise ShapeMismatchError("X must be an HMatrix")
        if X.algebra != self.algebra:
            raise AlgebraMismatchError(
                f"input algebra {X.algebra!r} does not match model {self.algebra!r}"
            )

    def _hidden(self, X: HMatrix) -> HMatrix:
        self._check_input(X)
        if X.cols != self.input_dim_:
            raise ShapeMismatchError(
                f"input width {X.cols} != model input width {self.input_dim_}"
            )
        act = ACTIVATIONS[self.activation]
        return act(matmul(_augment_ones(X), self.weights_))

    def fit(self, X, T):
        """Fit the output layer on inputs X (M x D) and targets T (M x O)."""
        self._check_input(X)
        self._check_input(T)
        if X.rows != T.rows:
            raise ShapeMismatchError(
                f"{X.rows} input rows vs {T.rows} target rows"
            )
        if not hasattr(self, "weights_") or self.input_dim_ != X.cols:
            self.initialize(X.cols)
        H = _augment_ones(self._hidden(X))
        self.output_weights_ = lstsq(H, T)
        self.output_dim_ = T.cols
        return self

    def predict(self, X) -> HMatrix:
        if not hasattr(self, "output_weights_"):
            raise NotTrainedError("fit the model before predicting")
        return matmul(_augment_ones(self._hidden(X)), self.output_weights_)

    def tnp(self):
        """Parameter count of the fitted architecture."""
        return tnp(
            self.input_dim_, self.hidden_neurons, self.output_dim_, self.algebra.dim
        )

    # -- persistence ---------------------------------------------------------

    def to_dict(self):
        doc = {
            "algebra": self.algebra.to_dict(),
            "config": {
                "hidden_neurons": self.hidden_neurons,
                "alpha": self.alpha,
                "activation": self.activation,
                "seed": self.seed,
            },
            "W": None,
            "M": None,
        }
        if hasattr(self, "weights_"):
            doc["config"]["input_dim"] = self.input_dim_
            doc["W"] = self.weights_.coeffs.tolist()
        if hasattr(self, "output_weights_"):
            doc["config"]["output_dim"] = self.output_dim_
            doc["M"] = self.output_weights_.coeffs.tolist()
        return doc

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def from_dict(cls, doc):
        try:
            algebra = AlgebraSpec.from_dict(doc["algebra"])
            config = doc["config"]
            model = cls(
                algebra,
                config["hidden_neurons"],
                alpha=config.get("alpha"),
                activation=config.get("activation", "split_tanh"),
                seed=config.get("seed", 0),
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed model document: {exc}") from exc
        # A file claiming a catalog name must carry the catalog table.
        try:
            reference = catalog.builtin(algebra.name)
        except UnknownAlgebraError:
            reference = None
        if reference is not None and reference != algebra:
            raise UnknownAlgebraError(
                f"table in file does not match builtin algebra {algebra.name!r}"
            )
        if doc.get("W") is not None:
            model.weights_ = HMatrix(algebra, doc["W"])
            model.input_dim_ = model.weights_.rows - 1
            model.alpha_ = model._resolve_alpha(model.input_dim_)
        if doc.get("M") is not None:
            model.output_weights_ = HMatrix(algebra, doc["M"])
            model.output_dim_ = model.output_weights_.cols
        return model

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FormatError(f"not valid JSON: {exc}") from exc
        return cls.from_dict(doc)
