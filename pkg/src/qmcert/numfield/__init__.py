"""Number fields: verified integral bases, automorphisms, ideals, splitting data."""

from .field import (
    ClassGenerator,
    FieldElement,
    FieldSpecError,
    NumberFieldSpec,
    QuadraticSubfield,
    apply_automorphism,
    element_norm,
)
from .ideals import (
    IdealError,
    IntegralIdeal,
    ideal_from_generators,
    ideal_from_prime,
    ideal_multiply,
    ideal_power,
    principal_ideal,
    unit_ideal,
    verify_principal_generator,
)
from .io import bundled_field, field_file_hash, load_field, parse_field_text, spec_from_dict
from .splitting import (
    FactorizationClaimError,
    IndexDivisorError,
    SplittingData,
    ramified_primes,
    splits_completely,
    splitting_data,
    verify_prime_factorization,
)
from .verify import FieldVerificationError, VerificationReport, verify_field_spec

__all__ = [
    "ClassGenerator",
    "FactorizationClaimError",
    "FieldElement",
    "FieldSpecError",
    "FieldVerificationError",
    "IdealError",
    "IndexDivisorError",
    "IntegralIdeal",
    "NumberFieldSpec",
    "QuadraticSubfield",
    "SplittingData",
    "VerificationReport",
    "apply_automorphism",
    "bundled_field",
    "element_norm",
    "field_file_hash",
    "ideal_from_generators",
    "ideal_from_prime",
    "ideal_multiply",
    "ideal_power",
    "load_field",
    "parse_field_text",
    "principal_ideal",
    "ramified_primes",
    "spec_from_dict",
    "splits_completely",
    "splitting_data",
    "unit_ideal",
    "verify_field_spec",
    "verify_principal_generator",
    "verify_prime_factorization",
]
