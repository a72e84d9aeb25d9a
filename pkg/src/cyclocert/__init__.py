"""Exact cyclotomic / q-binomial polynomials and Bezout certificates for their ideals in Z[q]."""

from .certengine import (
    NonUnitWitness,
    PrincipalCertificate,
    UnitCertificate,
    principal_certificate,
    theorem_qbinomial,
    theorem_squarefree,
    unit_certificate,
)
from .polycore import IntPoly
from .qobjects import cyclotomic, q_binomial, q_integer, quotient_generator
from .verify import verify_certificate

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "NonUnitWitness",
    "PrincipalCertificate",
    "UnitCertificate",
    "cyclotomic",
    "principal_certificate",
    "q_binomial",
    "q_integer",
    "quotient_generator",
    "theorem_qbinomial",
    "theorem_squarefree",
    "unit_certificate",
    "verify_certificate",
]
