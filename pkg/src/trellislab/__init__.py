"""Tail-biting trellis realizations: construction, duality, analysis, reduction."""

from .galois import FieldSpec, Mat, Subspace, GF2, GF3
from .trellis import Generator, Span, Trellis

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "Mat",
    "Subspace",
    "GF2",
    "GF3",
    "Generator",
    "Span",
    "Trellis",
]
