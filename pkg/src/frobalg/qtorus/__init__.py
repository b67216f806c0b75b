"""Quantum tori at odd roots of unity: products, Frobenius image, traces and their oracles."""

from .forms import FixtureInvalid, SkewForm, mul_monomial
from .lattice import (
    Lattice,
    LatticeNotCentral,
    central_lattice,
    hermite_rows,
    smith_normal_form,
    standard_lattice,
    validate_central,
)
from .oracle import (
    BasisNotClosed,
    DegeneratePairing,
    DivisionWitness,
    FrobeniusSubring,
    GramCertificate,
    LatticeSubring,
    NotInvertible,
    brute_force_trace,
    division_witness,
    gram_certificate,
    left_matrix,
    right_matrix,
)
from .torus import QuantumTorus, TorusElement

__all__ = [
    "BasisNotClosed",
    "DegeneratePairing",
    "DivisionWitness",
    "FixtureInvalid",
    "FrobeniusSubring",
    "GramCertificate",
    "Lattice",
    "LatticeNotCentral",
    "LatticeSubring",
    "NotInvertible",
    "QuantumTorus",
    "SkewForm",
    "TorusElement",
    "brute_force_trace",
    "central_lattice",
    "division_witness",
    "gram_certificate",
    "hermite_rows",
    "left_matrix",
    "mul_monomial",
    "right_matrix",
    "smith_normal_form",
    "standard_lattice",
    "validate_central",
]
