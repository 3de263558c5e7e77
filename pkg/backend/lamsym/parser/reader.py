"""
High-level readers: expressions, second-order ODEs and first-order systems.

Usage:
    from backend.lamsym.parser import parse_expr, parse_ode, parse_system

    ode = parse_ode("y'' = -2*y*y' + q(t)*y' + q'(t)*y")
    sys = parse_system("r1' = b*exp(r2) + a; r2' = B*exp(r1) + A")
"""

import logging
from typing import Optional, Tuple

import sympy

from ..errors import ExprSyntaxError, HigherDerivativeOnRHS, NotSolvable, ParseFailure
from ..expr.calculus import diff_partial, substitute
from ..expr.canonical import is_zero, normalize
from ..expr.symbols import SymbolKind, coordinate, dependent, info
from ..jlm.models import FirstOrderSystem, SecondOrderODE
from .builder import build
from .syntax import Equation, Name, parse_equation, parse_statements, parse_tree


logger = logging.getLogger(__name__)


def parse_expr(text: str) -> sympy.Expr:
    """Parse and normalize a single expression."""
    return normalize(build(parse_tree(text)))


def _highest_coordinate(expr: sympy.Expr) -> Optional[Tuple[str, int]]:
    best = None
    for sym in expr.free_symbols:
        si = info(sym)
        if si.kind is SymbolKind.COORDINATE and (best is None or (si.order, si.name) > (best[1], best[0])):
            best = (si.name, si.order)
    return best


def parse_ode(text: str) -> SecondOrderODE:
    """Parse ``y'' = phi`` or an equation linear in y''.

    In the implicit form the dependent variable is the base name of the
    highest derivative coordinate, which must be of order 2.
    """
    eq = parse_equation(text)
    if isinstance(eq.left, Name) and eq.left.name.endswith("''") and not eq.left.name.endswith("'''"):
        name = eq.left.name[:-2]
        ypp = coordinate(name, 2)
        phi = build(eq.right)
        if any(info(s).kind is SymbolKind.COORDINATE and info(s).order >= 2 for s in phi.free_symbols):
            raise HigherDerivativeOnRHS(f"{ypp.name} or higher on the right-hand side", text=text)
        return SecondOrderODE(name, phi, source=text)
    return _implicit_ode(eq, text)


def _implicit_ode(eq: Equation, text: str) -> SecondOrderODE:
    residual = normalize(build(eq))
    highest = _highest_coordinate(residual)
    if highest is None or highest[1] != 2:
        raise ParseFailure('not a second-order equation', text=text)
    name = highest[0]
    ypp = coordinate(name, 2)
    coeff = diff_partial(residual, ypp)
    if is_zero(coeff) or not is_zero(diff_partial(coeff, ypp)):
        raise NotSolvable(f'equation is not linear in {ypp.name}', text=text)
    phi = -substitute(residual, {ypp: 0}) / coeff
    logger.debug('implicit equation solved for %s', ypp.name)
    return SecondOrderODE(name, phi, source=text)


def parse_system(text: str) -> FirstOrderSystem:
    """Parse ``w1' = W1; w2' = W2; ...``."""
    variables, rhs = [], []
    for stmt in parse_statements(text):
        if not isinstance(stmt, Equation) or not isinstance(stmt.left, Name) \
                or not stmt.left.name.endswith("'") or stmt.left.name.endswith("''"):
            offset = getattr(stmt, 'offset', 0)
            raise ExprSyntaxError("expected a statement of the form w' = expression", offset, {'='})
        variables.append(dependent(stmt.left.name[:-1]))
        rhs.append(build(stmt.right))
    return FirstOrderSystem(tuple(variables), tuple(rhs))
