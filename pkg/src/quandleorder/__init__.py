"""Finite and lazy quandles, their orderings, extensions, n-quandles and
enveloping groups."""

from .errors import (
    AxiomError,
    CocycleError,
    ConstructionError,
    HypothesisRefused,
    MalformedInputError,
    PreconditionError,
    QuandleError,
    ResourceLimitError,
    StructuralError,
)
from .quandle import (
    FiniteQuandle,
    alexander,
    classify,
    conj,
    core,
    dihedral,
    dual_apply,
    make_standard,
    right_translation,
    takasaki,
    trivial,
    validate_quandle,
)
from .iso import is_isomorphic

__all__ = [
    "AxiomError",
    "CocycleError",
    "ConstructionError",
    "HypothesisRefused",
    "MalformedInputError",
    "PreconditionError",
    "QuandleError",
    "ResourceLimitError",
    "StructuralError",
    "FiniteQuandle",
    "alexander",
    "classify",
    "conj",
    "core",
    "dihedral",
    "dual_apply",
    "make_standard",
    "right_translation",
    "takasaki",
    "trivial",
    "validate_quandle",
    "is_isomorphic",
]

__version__ = "0.1.0"
