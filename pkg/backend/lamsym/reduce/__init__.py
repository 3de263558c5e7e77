"""
Invariants, order reduction, quadrature and first-integral validation.
"""

from .models import T1, Y1, FirstIntegral, InvariantPair
from .invariants import apply_prolonged, certify_pair, find_invariants, independent, invariant_basis
from .reduction import reduce_basis, reduce_ode, reduction_residual
from .quadrature import integral_in_original_variables, quadrature
from .integrals import check_first_integral, integrals_agree
from .drift import integrate_trajectory, numeric_drift

__all__ = [
    'T1',
    'Y1',
    'FirstIntegral',
    'InvariantPair',
    'apply_prolonged',
    'certify_pair',
    'find_invariants',
    'independent',
    'invariant_basis',
    'reduce_basis',
    'reduce_ode',
    'reduction_residual',
    'integral_in_original_variables',
    'quadrature',
    'check_first_integral',
    'integrals_agree',
    'integrate_trajectory',
    'numeric_drift',
]
