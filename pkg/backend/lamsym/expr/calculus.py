"""
Differentiation and substitution on normalized expressions.

Arbitrary functions are symbols ``f(t)``, ``f'(t)``, ... and antiderivative
markers are symbols ``Int(r)``; both only move under d/dt, by their jet
rules. All results are normalized.

Usage:
    from backend.lamsym.expr.calculus import diff_partial, total_derivative

    total_derivative(y**2, dependents={'y'})    # 2*y*y'
    total_derivative(yp**2)                     # 2*y'*y''
    diff_partial(yp**2 / y, yp)                 # 2*y'/y
"""

from typing import AbstractSet, Dict, Iterable, Mapping, Sequence, Tuple, Union

import sympy

from ..errors import NonlocalDerivative
from .canonical import normalize
from .symbols import (
    NO_DEPENDENTS,
    SymbolKind,
    T,
    dependents_of,
    depends_on_state,
    function,
    info,
    jet_successor,
)


Bindings = Union[Mapping[sympy.Symbol, sympy.Expr], Iterable[Tuple[sympy.Symbol, sympy.Expr]]]


def diff_partial(e, s: sympy.Symbol, dependents: AbstractSet[str] = NO_DEPENDENTS) -> sympy.Expr:
    """Partial derivative of ``e`` with respect to ``s``.

    Function symbols and antiderivative markers are functions of t alone, so
    they are constants for every ``s`` except t. Differentiating a marker
    whose integrand involves the state (a name in ``dependents`` or a
    derivative coordinate) with respect to t has no local meaning and
    raises NonlocalDerivative.
    """
    e = sympy.sympify(e)
    out = sympy.diff(e, s)
    if s == T:
        dependents = frozenset(dependents) | dependents_of(e)
        for sym in e.free_symbols:
            si = info(sym)
            if si.kind is SymbolKind.FUNCTION:
                out += sympy.diff(e, sym) * function(si.name, si.order + 1)
            elif si.kind is SymbolKind.ANTIDERIVATIVE:
                if depends_on_state(si.integrand, dependents):
                    raise NonlocalDerivative(
                        f'{sym.name} is not a function of t alone', marker=sym.name
                    )
                out += sympy.diff(e, sym) * si.integrand
    return normalize(out)


def total_derivative(e, ode=None, dependents: AbstractSet[str] = NO_DEPENDENTS) -> sympy.Expr:
    """D_t e; with ``ode`` the highest coordinate is replaced on-shell.

    Plain names are dependent variables when they are in ``dependents``,
    are the dependent variable of ``ode``, or carry a derivative
    coordinate in ``e``; every other plain name is a constant parameter.
    """
    e = sympy.sympify(e)
    dependents = frozenset(dependents) | dependents_of(e)
    if ode is not None:
        dependents |= ode.dependents
    out = sympy.diff(e, T)
    for sym in e.free_symbols:
        successor = jet_successor(sym, dependents)
        if successor is not None:
            out += sympy.diff(e, sym) * successor
    if ode is not None:
        return on_shell(out, ode)
    return normalize(out)


def on_shell(e, ode) -> sympy.Expr:
    """Replace y'' by the right-hand side of ``ode``."""
    return substitute(e, [(ode.ypp, ode.phi)])


def _rebuild_markers(e: sympy.Expr, mapping: Dict[sympy.Symbol, sympy.Expr]) -> Dict[sympy.Symbol, sympy.Expr]:
    from .symbols import antiderivative

    extra = {}
    for sym in e.free_symbols:
        si = info(sym)
        if si.kind is SymbolKind.ANTIDERIVATIVE and si.integrand.free_symbols & mapping.keys():
            extra[sym] = antiderivative(substitute(si.integrand, mapping))
    return extra


def substitute(e, bindings: Bindings) -> sympy.Expr:
    """Simultaneous substitution of ``bindings``, then normalize.

    Marker integrands that mention a bound symbol are rewritten into new
    markers.
    """
    mapping = dict(bindings.items() if isinstance(bindings, Mapping) else bindings)
    mapping = {sympy.sympify(k): sympy.sympify(v) for k, v in mapping.items()}
    e = sympy.sympify(e)
    mapping.update(_rebuild_markers(e, mapping))
    return normalize(e.xreplace(mapping))


def function_bindings(name: str, value, max_order: int = 3) -> Dict[sympy.Symbol, sympy.Expr]:
    """Bindings specializing the arbitrary function ``name`` to ``value(t)``.

    ``function_bindings('q', t)`` maps q(t) to t, q'(t) to 1 and q''(t) to 0.
    """
    value = sympy.sympify(value)
    out = {}
    for order in range(max_order + 1):
        out[function(name, order)] = normalize(value)
        value = sympy.diff(value, T)
    return out


def jacobian(exprs: Sequence, symbols: Sequence[sympy.Symbol]) -> sympy.Matrix:
    return sympy.Matrix([[diff_partial(e, s) for s in symbols] for e in exprs])
