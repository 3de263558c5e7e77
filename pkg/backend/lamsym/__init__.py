# Lamsym Core Package
"""
Lambda-symmetries of second-order ODEs from the Jacobi last multiplier.

Usage:
    from backend.lamsym import parse_ode, analyze

    report = analyze("y'' = -2*y*y' + q(t)*y' + q'(t)*y")
    print(report.lambda_j, report.first_integrals)
"""

from .errors import LamsymError
from .config import Settings, get_settings
from .expr import (
    collect,
    diff_partial,
    function_bindings,
    is_zero,
    linear_relations,
    normalize,
    substitute,
    total_derivative,
)
from .parser import parse_expr, parse_ode, parse_system, render
from .jlm import (
    FirstOrderSystem,
    Multiplier,
    SecondOrderODE,
    divergence,
    lambda_from_divergence,
    multiplier,
    raise_order_2d,
    transform_multiplier,
)
from .symmetry import (
    AnsatzBasis,
    LambdaSymmetry,
    PointField,
    default_basis,
    determining_residual,
    equivalence_classes,
    in_span,
    is_equivalent,
    lambda_prolong,
    solve_determining,
)
from .reduce import (
    FirstIntegral,
    InvariantPair,
    check_first_integral,
    find_invariants,
    integrate_trajectory,
    numeric_drift,
    quadrature,
    reduce_ode,
)
from .report import AnalysisOptions, AnalysisReport, analyze

__version__ = '0.1.0'

__all__ = [
    'LamsymError',
    'Settings',
    'get_settings',
    'collect',
    'diff_partial',
    'function_bindings',
    'is_zero',
    'linear_relations',
    'normalize',
    'substitute',
    'total_derivative',
    'parse_expr',
    'parse_ode',
    'parse_system',
    'render',
    'FirstOrderSystem',
    'Multiplier',
    'SecondOrderODE',
    'divergence',
    'lambda_from_divergence',
    'multiplier',
    'raise_order_2d',
    'transform_multiplier',
    'AnsatzBasis',
    'LambdaSymmetry',
    'PointField',
    'default_basis',
    'determining_residual',
    'equivalence_classes',
    'in_span',
    'is_equivalent',
    'lambda_prolong',
    'solve_determining',
    'FirstIntegral',
    'InvariantPair',
    'check_first_integral',
    'find_invariants',
    'integrate_trajectory',
    'numeric_drift',
    'quadrature',
    'reduce_ode',
    'AnalysisOptions',
    'AnalysisReport',
    'analyze',
]
