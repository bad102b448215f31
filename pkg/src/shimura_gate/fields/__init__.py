"""Quadratic and abelian number fields, binary quadratic forms and explicit power-basis models."""

from .abelian import AbelianFieldSpec, contains_hilbert_class_field, parse_field_spec
from .forms import ClassGroupQF, quadratic_class_group
from .numberfield import PowerBasisField, power_basis_field, verify_supplied_generator
from .quadratic import QuadElement, QuadraticField, SplitPrimeIdeal, principal_generator, splitting_type

__all__ = [
    "AbelianFieldSpec",
    "ClassGroupQF",
    "PowerBasisField",
    "QuadElement",
    "QuadraticField",
    "SplitPrimeIdeal",
    "contains_hilbert_class_field",
    "parse_field_spec",
    "power_basis_field",
    "principal_generator",
    "quadratic_class_group",
    "splitting_type",
    "verify_supplied_generator",
]
