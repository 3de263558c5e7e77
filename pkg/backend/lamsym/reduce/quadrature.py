"""
Closed-form quadrature of reduced equations dy1/dt1 = G(t1, y1).

Returns a function I(t1, y1) constant along solutions. Supported forms,
tried in order:

    G = 0                             I = y1
    G = alpha(t1)*y1 + beta(t1)       integrating factor
    G = H(t1)*K(y1)                   separation of variables
    G = alpha*y1 + beta*y1^n          Bernoulli, via u = y1^(1 - n)

Anything else, or an antiderivative sympy cannot express in closed
form, raises NotSupported.
"""

import logging
from typing import Optional, Tuple

import sympy

from ..errors import NotPolynomialInGenerators, NotSupported
from ..expr.calculus import diff_partial, substitute
from ..expr.canonical import is_zero, normalize
from ..expr.collect import collect
from ..expr.symbols import SymbolKind, info
from .models import T1, Y1


logger = logging.getLogger(__name__)


def _integrate(expr, var) -> sympy.Expr:
    result = sympy.integrate(sympy.sympify(expr), var, conds='none')
    if result.has(sympy.Integral):
        raise NotSupported(f'no closed-form antiderivative of {expr} in {var}')
    return normalize(result)


def _linear_solution(alpha, beta, y) -> sympy.Expr:
    """I for y' = alpha*y + beta with alpha, beta functions of t1."""
    mu = normalize(sympy.exp(-_integrate(alpha, T1)))
    return normalize(mu * y - _integrate(beta * mu, T1))


def _as_linear(G) -> Optional[Tuple[sympy.Expr, sympy.Expr]]:
    alpha = diff_partial(G, Y1)
    if Y1 in alpha.free_symbols:
        return None
    beta = normalize(G - alpha * Y1)
    return alpha, beta


def _as_separable(G) -> Optional[Tuple[sympy.Expr, sympy.Expr]]:
    parts = sympy.separatevars(sympy.factor(G), symbols=[T1, Y1], dict=True)
    if not parts:
        return None
    H = parts['coeff'] * parts[T1]
    K = parts[Y1]
    return normalize(H), normalize(K)


def _as_bernoulli(G) -> Optional[Tuple[sympy.Expr, sympy.Expr, int]]:
    try:
        cmap = collect(G, [Y1])
    except NotPolynomialInGenerators:
        return None
    if len(cmap) != 2:
        return None
    degrees = {mon.degree(Y1): coeff for mon, coeff in cmap.items()}
    if 1 not in degrees:
        return None
    alpha = degrees.pop(1)
    (n, beta), = degrees.items()
    if n == 0 or Y1 in alpha.free_symbols or Y1 in beta.free_symbols:
        return None
    return alpha, beta, n


def quadrature(G) -> sympy.Expr:
    """I(t1, y1) with dI/dt1 = 0 whenever dy1/dt1 = G."""
    G = normalize(G)
    if any(info(s).kind is SymbolKind.ANTIDERIVATIVE for s in G.free_symbols):
        raise NotSupported('reduced equation holds an antiderivative marker')
    if is_zero(G):
        return Y1

    linear = _as_linear(G)
    if linear is not None:
        logger.debug('linear reduced equation')
        return _linear_solution(*linear, Y1)

    separable = _as_separable(G)
    if separable is not None:
        H, K = separable
        logger.debug('separable reduced equation')
        return normalize(_integrate(1 / K, Y1) - _integrate(H, T1))

    bernoulli = _as_bernoulli(G)
    if bernoulli is not None:
        alpha, beta, n = bernoulli
        logger.debug('Bernoulli reduced equation with exponent %d', n)
        u = Y1 ** (1 - n)
        return _linear_solution((1 - n) * alpha, (1 - n) * beta, u)

    raise NotSupported(f'no closed-form quadrature for dy1/dt1 = {G}')


def integral_in_original_variables(G, pair) -> sympy.Expr:
    """Quadrature of G composed with the invariant pair."""
    return substitute(quadrature(G), pair.bindings())
