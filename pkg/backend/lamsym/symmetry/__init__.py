"""
Lambda-prolongation, determining equation, ansatz solver and equivalence.
"""

from .models import AnsatzBasis, LambdaSymmetry, PointField
from .prolong import DeterminingOperator, determining_residual, lambda_prolong
from .solver import default_basis, solve_determining
from .equivalence import certify, equivalence_classes, equivalence_residual, in_span, is_equivalent

__all__ = [
    'AnsatzBasis',
    'LambdaSymmetry',
    'PointField',
    'DeterminingOperator',
    'determining_residual',
    'lambda_prolong',
    'default_basis',
    'solve_determining',
    'certify',
    'equivalence_classes',
    'equivalence_residual',
    'in_span',
    'is_equivalent',
]
