"""
Invariant pairs and first integrals.
"""

from dataclasses import dataclass

import sympy

from ..expr.canonical import normalize
from ..expr.symbols import placeholder


T1 = placeholder('t1')
Y1 = placeholder('y1')


@dataclass(frozen=True)
class InvariantPair:
    """New independent variable ``t1`` and first-order invariant ``y1``."""
    t1: sympy.Expr
    y1: sympy.Expr

    def __post_init__(self):
        object.__setattr__(self, 't1', normalize(self.t1))
        object.__setattr__(self, 'y1', normalize(self.y1))

    def bindings(self):
        """Map the placeholders t1, y1 to the invariants."""
        return {T1: self.t1, Y1: self.y1}

    def __str__(self) -> str:
        from ..parser.render import render
        return f't1 = {render(self.t1)}, y1 = {render(self.y1)}'


@dataclass(frozen=True)
class FirstIntegral:
    """I(t, y, y') = constant_name along every solution."""
    i: sympy.Expr
    constant_name: str = 'a1'

    def __post_init__(self):
        object.__setattr__(self, 'i', normalize(self.i))

    def __str__(self) -> str:
        from ..parser.render import render
        return f'{render(self.i)} = {self.constant_name}'
