# Lamsym Parser Package
"""
Text grammar for expressions, second-order ODEs and first-order systems.

Usage:
    from backend.lamsym.parser import parse_ode, render

    ode = parse_ode("y'' = y'^2/y + f'(t)*y^(p+1) + p*f(t)*y'*y^p")
    print(render(ode.phi))
"""

from .syntax import ExprParser, Token, parse_tree, tokenize
from .builder import ExprBuilder, build
from .reader import parse_expr, parse_ode, parse_system
from .render import render

__all__ = [
    'ExprParser',
    'Token',
    'tokenize',
    'parse_tree',
    'ExprBuilder',
    'build',
    'parse_expr',
    'parse_ode',
    'parse_system',
    'render',
]
