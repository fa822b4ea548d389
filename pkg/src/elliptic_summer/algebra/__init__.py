"""Exact arithmetic substrate: fields, polynomials, rational functions, series."""

from .fields import DensePoly, FieldConfig, FpT, PrimeFnField, Rationals
from .ratfn import RatFn
from .series import TruncatedLaurent, series_compose, series_mul_inverse, series_reversion

__all__ = [
    "DensePoly", "FieldConfig", "FpT", "PrimeFnField", "Rationals", "RatFn",
    "TruncatedLaurent", "series_compose", "series_mul_inverse", "series_reversion",
]
