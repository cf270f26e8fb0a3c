"""Darboux integration of polynomial differential 1-forms over Q and prime fields."""

from .algebra import GF, QQ, FieldSpec, MultiPoly, RatFunc, field_inverse, is_irreducible, poly_gcd, poly_ring
from .darboux import (
    Certificate,
    FirstIntegral,
    LogForm,
    build_logform,
    cofactor,
    cofactor_dependence,
    first_integral_check,
    form_invariant,
    multiplicative_integral,
    rational_first_integral,
    tangency_check,
)
from .dconst import DConstant, dim_forms_exact, nk_paper
from .exterior import DiffForm, VectorField, d, ext_d, wedge
from .parser import parse_form, parse_poly, parse_ratfunc

__version__ = "0.1.0"
