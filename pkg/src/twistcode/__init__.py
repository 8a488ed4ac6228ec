"""Twisted centralizer codes C(A, a) = {B : AB = aBA} over finite fields."""

from __future__ import annotations

from ._backend import NAME as backend
from .bounds import bounds_report, eigen_data, spectral_bounds
from .census import run_census, verify_named_examples
from .code import CodeParams, TwistedCode, code_build
from .field import FieldSpec, field_make, gf
from .matrix import Mat, format_matrix, parse_matrix

__version__ = "0.1.0"

__all__ = [
    "CodeParams",
    "FieldSpec",
    "Mat",
    "TwistedCode",
    "backend",
    "bounds_report",
    "code_build",
    "eigen_data",
    "field_make",
    "format_matrix",
    "gf",
    "parse_matrix",
    "run_census",
    "spectral_bounds",
    "verify_named_examples",
]
