"""Decide when Shimura curves of Gamma_0(p)-type have no points over an abelian field."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegreeUnsupported,
    InvalidDiscriminant,
    InvalidInput,
    MalformedInput,
    NoKnownModel,
    NonAbelianField,
    ShimuraGateError,
)
from .fields.abelian import AbelianFieldSpec, parse_field_spec  # noqa: E402
from .quaternion import validate_discriminant  # noqa: E402
from .verdict import VerdictOptions, evaluate, evaluate_range, irreducibility_verdict  # noqa: E402

__all__ = [
    "AbelianFieldSpec",
    "DegreeUnsupported",
    "InvalidDiscriminant",
    "InvalidInput",
    "MalformedInput",
    "NoKnownModel",
    "NonAbelianField",
    "ShimuraGateError",
    "VerdictOptions",
    "evaluate",
    "evaluate_range",
    "irreducibility_verdict",
    "parse_field_spec",
    "validate_discriminant",
]
