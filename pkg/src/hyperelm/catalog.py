"""Named algebras, the generalized Cayley-Dickson constructor, and property
probes.

The seven four-dimensional algebras ship with their published multiplication
tables written out in the same row/column layout they are usually printed in:
rows index the left factor, columns the right factor, cells name the product
(``"k"``, ``"-j"``, ``"1"``, ...).  ``real`` and ``complex`` are included as
degenerate baselines.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import AlgebraSpec
from .errors import EmptyParameterListError, UnknownAlgebraError

_UNIT_SYMBOLS = ("1", "i", "j", "k")

# Row unit times column unit, rows/columns ordered i, j, k.
_TABLES_4D = {
    "quaternion": [
        ["-1", "k", "-j"],
        ["-k", "-1", "i"],
        ["j", "-i", "-1"],
    ],
    "cd_pp": [  # R[+1,+1], hyperbolic quaternions
        ["1", "k", "j"],
        ["-k", "1", "-i"],
        ["-j", "i", "-1"],
    ],
    "cd_mp": [  # R[-1,+1], split-quaternions
        ["-1", "k", "-j"],
        ["-k", "1", "-i"],
        ["j", "i", "1"],
    ],
    "cd_pm": [  # R[+1,-1]
        ["1", "k", "j"],
        ["-k", "-1", "i"],
        ["-j", "-i", "1"],
    ],
    "clifford_1_1": [
        ["1", "-k", "-j"],
        ["k", "1", "-i"],
        ["j", "i", "1"],
    ],
    "tessarine": [
        ["-1", "k", "-j"],
        ["k", "1", "i"],
        ["-j", "i", "-1"],
    ],
    "klein4": [
        ["1", "k", "j"],
        ["k", "1", "i"],
        ["j", "i", "1"],
    ],
}

ALGEBRA_NAMES = (
    "real",
    "complex",
    "quaternion",
    "cd_pp",
    "cd_mp",
    "cd_pm",
    "clifford_1_1",
    "tessarine",
    "klein4",
)

_ALIASES = {
    "r": "real",
    "c": "complex",
    "q": "quaternion",
    "h": "quaternion",
    "cl11": "clifford_1_1",
    "t": "tessarine",
    "k4": "klein4",
}


def _parse_cell(cell, dim=4):
    """Turn a table cell like '-k' or '1' into a coefficient vector."""
    cell = cell.strip()
    sign = 1.0
    if cell.startswith("-"):
        sign = -1.0
        cell = cell[1:]
    vec = np.zeros(dim)
    vec[_UNIT_SYMBOLS.index(cell)] = sign
    return vec


def resolve_name(name):
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in ALGEBRA_NAMES:
        raise UnknownAlgebraError(f"unknown algebra {name!r}")
    return key


def builtin(name) -> AlgebraSpec:
    """The catalog algebra called ``name`` (aliases like 'q' accepted)."""
    return _builtin(resolve_name(name))


@lru_cache(maxsize=None)
def _builtin(key) -> AlgebraSpec:
    if key == "real":
        return AlgebraSpec("real", 1, np.zeros((0, 0, 1)))
    if key == "complex":
        return AlgebraSpec("complex", 2, [[[-1.0, 0.0]]])
    table = [[_parse_cell(cell) for cell in row] for row in _TABLES_4D[key]]
    return AlgebraSpec(key, 4, table)


def _cd_conj(x):
    out = -x
    out[0] = x[0]
    return out


def _cd_mult(x, y, gammas):
    # Doubling rule (a,b)(c,d) = (ac + g*conj(d)b, da + b*conj(c)), with g the
    # outermost parameter; validated against the published 4-d tables.
    if not gammas:
        return x * y
    g = gammas[-1]
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    sub = gammas[:-1]
    return np.concatenate(
        [
            _cd_mult(a, c, sub) + g * _cd_mult(_cd_conj(d), b, sub),
            _cd_mult(d, a, sub) + _cd_mult(b, _cd_conj(c), sub),
        ]
    )


def cayley_dickson(gammas) -> AlgebraSpec:
    """Algebra of dimension ``2**len(gammas)`` built by recursive doubling.

    ``gammas`` are the per-doubling sign parameters, innermost first:
    ``cayley_dickson([-1])`` gives the complex numbers and
    ``cayley_dickson([-1, -1])`` the quaternions.  Values outside {-1, +1}
    are accepted but correspond to no published table.
    """
    gammas = [float(g) for g in gammas]
    if not gammas:
        raise EmptyParameterListError("at least one doubling parameter is required")
    dim = 2 ** len(gammas)
    basis = np.eye(dim)
    table = np.empty((dim - 1, dim - 1, dim))
    for a in range(1, dim):
        for b in range(1, dim):
            table[a - 1, b - 1] = _cd_mult(basis[a], basis[b], gammas)
    label = "R[" + ",".join(f"{g:+g}" for g in gammas) + "]"
    return AlgebraSpec(label, dim, table)


@dataclass(frozen=True)
class PropertyReport:
    commutative: bool
    associative: bool
    units_self_inverse: bool


def check_properties(spec: AlgebraSpec) -> PropertyReport:
    """Decide commutativity, associativity, and unit self-inverseness.

    Bilinearity makes the exhaustive check over basis elements sufficient, and
    keeps the verdict exact for integer tables.
    """
    S = spec.units
    commutative = np.array_equal(S, S.transpose(1, 0, 2))
    # (e_a e_b) e_c vs e_a (e_b e_c), all basis triples at once.
    left = np.einsum("abk,kcl->abcl", S, S)
    right = np.einsum("bcm,aml->abcl", S, S)
    associative = np.array_equal(left, right)
    unit = np.zeros(spec.dim)
    unit[0] = 1.0
    units_self_inverse = all(
        np.array_equal(S[k, k], unit) for k in range(1, spec.dim)
    )
    return PropertyReport(commutative, associative, units_self_inverse)


def format_table(spec: AlgebraSpec) -> str:
    """Render the unit-product table in the printed row/column layout."""
    if spec.dim == 1:
        return f"{spec.name}: no hyperimaginary units"
    labels = [f"i{k}" for k in range(1, spec.dim)]
    if spec.dim == 4:
        labels = ["i", "j", "k"]

    def cell(vec):
        terms = []
        for idx, c in enumerate(vec):
            if c == 0:
                continue
            sym = "1" if idx == 0 else labels[idx - 1]
            if c == 1:
                terms.append(sym)
            elif c == -1:
                terms.append(f"-{sym}")
            else:
                terms.append(f"{c:g}{sym}" if idx else f"{c:g}")
        return "+".join(terms).replace("+-", "-") or "0"

    width = 6
    header = spec.name.ljust(width) + "".join(l.rjust(width) for l in labels)
    lines = [header, "-" * len(header)]
    for a, row_label in enumerate(labels):
        cells = [cell(spec.table[a, b]) for b in range(spec.dim - 1)]
        lines.append(row_label.ljust(width) + "".join(c.rjust(width) for c in cells))
    return "\n".join(lines)
