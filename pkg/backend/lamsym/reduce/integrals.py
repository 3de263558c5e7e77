"""
Symbolic first-integral checks.
"""

import itertools

from ..expr.calculus import diff_partial, total_derivative
from ..expr.canonical import is_zero
from ..expr.symbols import T
from .models import FirstIntegral


def check_first_integral(ode, integral: FirstIntegral) -> bool:
    """D_t I vanishes on solutions; markers differentiate to their integrands."""
    return is_zero(total_derivative(integral.i, ode))


def integrals_agree(ode, a: FirstIntegral, b: FirstIntegral) -> bool:
    """Whether b is a function of a: every 2x2 minor of d(a, b)/d(t, y, y') vanishes."""
    variables = (T, ode.y, ode.yp)
    rows = [[diff_partial(f.i, v, ode.dependents) for v in variables] for f in (a, b)]
    return all(
        is_zero(rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i])
        for i, j in itertools.combinations(range(3), 2)
    )
