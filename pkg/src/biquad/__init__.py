"""Exact arithmetic and search tools for real biquadratic fields.

Core modules:

* ``field``: field classification, element arithmetic, embeddings and exact signs.
* ``quad``: continued fractions, units and indecomposables of the quadratic subfields.
* ``decompose``: bounded searches for decompositions and squares.
* ``units``: unit-group bookkeeping for totally positive units.
* ``forms``: quadratic forms over the ring of integers and the escalation search.

The hot loops live in ``_pykernels`` with a compiled twin ``_ckernels``;
``backend`` reports which one was loaded.
"""

from ._backend import backend
from .errors import (
    BiquadError,
    BudgetExceeded,
    DegenerateField,
    FieldMismatch,
    MismatchFound,
    NoRecipe,
    NotSquarefree,
    VariantUndefined,
)
from .field import AlgebraicNumber, BasisClass, FieldSpec, classify_field

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "BasisClass",
    "BiquadError",
    "BudgetExceeded",
    "DegenerateField",
    "FieldMismatch",
    "FieldSpec",
    "MismatchFound",
    "NoRecipe",
    "NotSquarefree",
    "VariantUndefined",
    "backend",
    "classify_field",
]
