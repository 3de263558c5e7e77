"""
Two-dimensional order raising: eliminate one variable of a 2x2 system
through a caller-supplied inverse and obtain a second-order equation.
"""

import logging

import sympy

from ..errors import InverseNotValid, NotSolvable
from ..expr.calculus import diff_partial, substitute, total_derivative
from ..expr.canonical import is_zero, normalize
from ..expr.symbols import coordinate
from .models import FirstOrderSystem, SecondOrderODE


logger = logging.getLogger(__name__)


def raise_order_2d(sys: FirstOrderSystem, solve_for: sympy.Symbol, inverse) -> SecondOrderODE:
    """Second-order equation for the variable that is kept.

    ``inverse`` gives ``solve_for`` in terms of t, the other variable w and
    w'. It must turn the kept variable's equation into an identity.
    """
    if sys.dimension != 2:
        raise ValueError(f'order raising needs a 2-dimensional system, got {sys.dimension}')
    solve_for = sympy.Symbol(str(solve_for))
    if solve_for not in sys.variables:
        raise ValueError(f'{solve_for} is not a variable of the system')
    i = sys.variables.index(solve_for)
    kept = sys.variables[1 - i]
    eliminated_rhs, kept_rhs = sys.rhs[i], sys.rhs[1 - i]
    inverse = normalize(inverse)
    if solve_for in inverse.free_symbols:
        raise InverseNotValid(f'inverse still contains {solve_for}', inverse=inverse)

    wp = coordinate(kept.name, 1)
    wpp = coordinate(kept.name, 2)
    if not is_zero(substitute(kept_rhs, {solve_for: inverse}) - wp):
        raise InverseNotValid(
            f"substituting the inverse does not make {kept.name}' = {kept_rhs} an identity",
            inverse=inverse,
        )

    lhs = total_derivative(inverse, dependents={kept.name})
    coeff = diff_partial(lhs, wpp)
    if is_zero(coeff):
        raise NotSolvable(f'{wpp.name} cannot be isolated', inverse=inverse)
    rest = substitute(lhs, {wpp: 0})
    phi = (substitute(eliminated_rhs, {solve_for: inverse}) - rest) / coeff
    logger.debug('raised order eliminating %s', solve_for)
    return SecondOrderODE(kept.name, normalize(phi))
