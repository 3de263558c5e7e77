"""
Divergence, lambda from the divergence, and Jacobi last multipliers.

A Jacobi last multiplier M of w' = W(t, w) satisfies
d(log M)/dt + div W = 0 along solutions, so M = exp(-Int(div W)).
Writing omega = log(1/M) gives omega' = div W, which is the lambda used
for the symmetry search of a second-order equation.

Usage:
    from backend.lamsym.jlm import lambda_from_divergence, multiplier

    lam = lambda_from_divergence(ode)
    mult = multiplier(ode.system())
"""

import logging
from typing import Sequence

import sympy

from .. import diagnostics
from ..errors import SingularJacobian
from ..expr.calculus import diff_partial
from ..expr.canonical import is_zero, normalize
from ..expr.symbols import SymbolKind, T, antiderivative, info
from .models import FirstOrderSystem, Multiplier, SecondOrderODE


logger = logging.getLogger(__name__)


def divergence(sys: FirstOrderSystem) -> sympy.Expr:
    """Sum of dW_i/dw_i."""
    return normalize(sympy.Add(*[diff_partial(w, v) for v, w in zip(sys.variables, sys.rhs)]))


def lambda_from_divergence(ode: SecondOrderODE) -> sympy.Expr:
    """d(phi)/dy', the divergence of the implied system.

    A zero divergence is a success, recorded as ZERO_DIVERGENCE.
    """
    lam = diff_partial(ode.phi, ode.yp)
    if is_zero(lam):
        diagnostics.record(diagnostics.ZERO_DIVERGENCE, str(ode))
        return sympy.S.Zero
    return lam


def _is_time_polynomial(expr: sympy.Expr, dependents) -> bool:
    for sym in expr.free_symbols:
        if info(sym, dependents).kind not in (SymbolKind.INDEPENDENT, SymbolKind.PARAMETER):
            return False
    return expr.is_polynomial(T)


def multiplier(sys: FirstOrderSystem) -> Multiplier:
    """M = exp(-Int(div)), integrated eagerly only for a polynomial in t."""
    div = divergence(sys)
    if is_zero(div):
        diagnostics.record(diagnostics.ZERO_DIVERGENCE, str(sys))
        return Multiplier(sympy.S.Zero, sympy.S.One, sympy.S.Zero, zero_divergence=True)
    if _is_time_polynomial(div, sys.dependents):
        omega = normalize(sympy.integrate(div, T))
    else:
        omega = antiderivative(div)
        logger.debug('multiplier kept as a marker for %s', omega.name)
    return Multiplier(div, normalize(sympy.exp(-omega)), omega)


def transform_multiplier(m, jacobian: Sequence[Sequence]) -> sympy.Expr:
    """M_[r] = M_[w] * det(d(w)/d(r)); the sign of the determinant is kept."""
    matrix = sympy.Matrix([[normalize(c) for c in row] for row in jacobian])
    if not matrix.is_square:
        raise ValueError(f'jacobian must be square, got {matrix.shape}')
    det = normalize(matrix.det(method='berkowitz'))
    if is_zero(det):
        raise SingularJacobian('jacobian determinant vanishes', jacobian=matrix)
    return normalize(sympy.sympify(m) * det)
