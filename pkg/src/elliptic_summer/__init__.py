"""Exact decision procedures for summability of elliptic functions under a non-torsion translation."""

__version__ = "0.1.0"

from .algebra import PrimeFnField, Rationals
from .applications import (IntegrabilityVerdict, additive_integrability, dlog_summable,
                           eventually_integrable_char0, gauge_equivalent_constant,
                           summable_rr_dim, summable_rr_dim_bruteforce, summable_up_to_constant)
from .curve import O, CurvePoint, CurveSpec
from .divisor import Divisor
from .divisors import ev_abel_jacobi, principal_function, rr_basis, rr_dimension
from .function_field import FnElt, delta, divisor_of, laurent_expand, tau_shift, translate_by
from .orbits import build_pinning, orbit_decompose
from .residues import (NotSummable, Summable, decide_summable, default_pinning, is_summable,
                       orbital_residues, pano1_via_residues, panorbital_residues, reduced_form,
                       residue_report)

__all__ = [
    "__version__", "PrimeFnField", "Rationals", "CurveSpec", "CurvePoint", "O", "Divisor", "FnElt",
    "delta", "divisor_of", "laurent_expand", "tau_shift", "translate_by",
    "ev_abel_jacobi", "principal_function", "rr_basis", "rr_dimension",
    "build_pinning", "orbit_decompose", "default_pinning",
    "residue_report", "orbital_residues", "panorbital_residues", "pano1_via_residues",
    "reduced_form", "decide_summable", "is_summable", "Summable", "NotSummable",
    "IntegrabilityVerdict", "summable_rr_dim", "summable_rr_dim_bruteforce", "additive_integrability",
    "eventually_integrable_char0", "summable_up_to_constant", "dlog_summable",
    "gauge_equivalent_constant",
]
