"""
Order reduction through an invariant pair.

Along solutions dy1/dt1 = D(y1)/D(t1). The reduced right-hand side is
sought as G = N/M with N, M in the span of a basis over (t1, y1); clearing
the denominator turns D(y1)*M - D(t1)*N = 0 into a linear problem in the
coefficients of N and M.
"""

import logging
from typing import Optional, Sequence

import sympy

from ..config import get_settings
from ..errors import NoMatchInBasis, VerificationFailure
from ..expr.calculus import substitute, total_derivative
from ..expr.canonical import is_zero, normalize
from ..expr.collect import linear_relations
from ..symmetry.models import AnsatzBasis
from .models import T1, Y1, InvariantPair


logger = logging.getLogger(__name__)


def reduce_basis(window: Optional[int] = None, hints: Sequence = ()) -> AnsatzBasis:
    """t1^a*y1^b over the window, then ``hints``."""
    window = get_settings().reduce_window if window is None else window
    return AnsatzBasis(
        generators=tuple(sympy.sympify(h) for h in hints),
        window=window,
        variables=(T1, Y1),
    )


def reduction_residual(ode, pair: InvariantPair, G) -> sympy.Expr:
    """D(y1) - G(t1, y1)*D(t1) on solutions."""
    composed = substitute(G, pair.bindings())
    return normalize(
        total_derivative(pair.y1, ode) - composed * total_derivative(pair.t1, ode)
    )


def reduce_ode(ode, pair: InvariantPair, rhs_basis: AnsatzBasis) -> sympy.Expr:
    """G(t1, y1) with dy1/dt1 = G, expressed in the placeholders t1, y1."""
    candidates = rhs_basis.candidates()
    composed = [substitute(b, pair.bindings()) for b in candidates]
    d_y1 = total_derivative(pair.y1, ode)
    d_t1 = total_derivative(pair.t1, ode)
    n = len(candidates)

    # unknowns: denominator coefficients, then numerator coefficients
    columns = [d_y1 * b for b in composed] + [-d_t1 * b for b in composed]
    for vec in linear_relations(columns):
        denom = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * b
                            for c, b in zip(vec[:n], candidates) if c])
        if is_zero(denom):
            continue
        numer = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * b
                            for c, b in zip(vec[n:], candidates) if c])
        G = normalize(numer / denom)
        if not is_zero(reduction_residual(ode, pair, G)):
            raise VerificationFailure(f'reduced equation dy1/dt1 = {G} does not hold')
        logger.debug('reduced equation: dy1/dt1 = %s', G)
        return G
    raise NoMatchInBasis(
        f'no reduced equation in a basis of {n} functions of (t1, y1)', basis_size=n,
    )
