"""
First-order systems, Jacobi last multipliers and order raising.
"""

from .models import FirstOrderSystem, Multiplier, SecondOrderODE
from .multiplier import divergence, lambda_from_divergence, multiplier, transform_multiplier
from .raising import raise_order_2d

__all__ = [
    'FirstOrderSystem',
    'Multiplier',
    'SecondOrderODE',
    'divergence',
    'lambda_from_divergence',
    'multiplier',
    'transform_multiplier',
    'raise_order_2d',
]
