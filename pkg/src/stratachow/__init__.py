"""Exact verification engine for stratified Chow-ring presentations."""
from .poly import GradedRing, Polynomial, RingMap, parse_polynomial, print_canonical, substitute, homogeneous_components
from .groebner import (
    Ideal,
    MonomialOrder,
    groebner_basis,
    normal_form,
    is_member,
    ideal_equal,
    kernel_of_map,
    is_nonzerodivisor,
    divide_in_quotient,
    ideal_quotient,
)

__version__ = "0.1.0"
