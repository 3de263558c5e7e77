"""
Exact symbolic expression kernel.

Expressions are sympy trees over interned symbols; every public operation
returns the canonical form produced by ``normalize``.
"""

from .symbols import (
    SymbolKind,
    SymbolInfo,
    T,
    antiderivative,
    coordinate,
    dependent,
    dependents_of,
    function,
    independent,
    info,
    parameter,
    placeholder,
)
from .canonical import RationalForm, RationalSpace, ZeroTest, canonical, equal, is_zero, normalize, zero_test
from .calculus import diff_partial, function_bindings, jacobian, on_shell, substitute, total_derivative
from .collect import CoefficientMap, Monomial, collect, linear_relations, nullspace_of

__all__ = [
    'SymbolKind',
    'SymbolInfo',
    'T',
    'antiderivative',
    'coordinate',
    'dependent',
    'dependents_of',
    'function',
    'independent',
    'info',
    'parameter',
    'placeholder',
    'RationalForm',
    'RationalSpace',
    'ZeroTest',
    'canonical',
    'equal',
    'is_zero',
    'normalize',
    'zero_test',
    'diff_partial',
    'function_bindings',
    'jacobian',
    'on_shell',
    'substitute',
    'total_derivative',
    'CoefficientMap',
    'Monomial',
    'collect',
    'linear_relations',
    'nullspace_of',
]
