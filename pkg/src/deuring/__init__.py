"""Explicit Deuring correspondence for small primes.

For a prime p, pairs every supersingular j-invariant in characteristic p with
the maximal order (given by a reduced ternary form of discriminant p) that is
its endomorphism ring.
"""

from .finite_fields import FieldElement, FiniteField, embed, make_field, root_of
from .ternary_forms import TernaryForm, enumerate_reduced, equivalent
from .clifford_orders import OrderPresentation, clifford
from .supersingular_curves import Curve, supersingular_j_list
from .matcher import Correspondence, build_correspondence

__all__ = [
    "Correspondence", "Curve", "FieldElement", "FiniteField", "OrderPresentation",
    "TernaryForm", "build_correspondence", "clifford", "embed", "enumerate_reduced",
    "equivalent", "make_field", "root_of", "supersingular_j_list",
]
