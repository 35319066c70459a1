"""Exact Macdonald and interpolation polynomials with the Fourier pairing."""

from .exactfield import DegenerateSpecialization, NumericField, RatFunc, SymbolicField, make_field
from .macdonald import (
    BasisCache,
    InternalInconsistency,
    binomial_expansion,
    pairing_via_operators,
    pairing_via_spectrum,
)
from .partitions import parse_partition, partition
from .symfunc import SymPoly, render_sympoly

__version__ = "0.1.0"

__all__ = [
    "BasisCache",
    "DegenerateSpecialization",
    "InternalInconsistency",
    "NumericField",
    "RatFunc",
    "SymPoly",
    "SymbolicField",
    "binomial_expansion",
    "make_field",
    "pairing_via_operators",
    "pairing_via_spectrum",
    "parse_partition",
    "partition",
    "render_sympoly",
]
