"""
Equation models: first-order systems, second-order ODEs and multipliers.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Tuple

import sympy

from ..errors import HigherDerivativeOnRHS, SymbolKindConflict
from ..expr.canonical import normalize
from ..expr.symbols import SymbolKind, coordinate, dependent, info


def _coordinates(expr: sympy.Expr):
    for sym in expr.free_symbols:
        si = info(sym)
        if si.kind is SymbolKind.COORDINATE:
            yield sym, si


def _reject_placeholders(expr: sympy.Expr) -> None:
    for sym in expr.free_symbols:
        if info(sym).kind is SymbolKind.PLACEHOLDER:
            raise SymbolKindConflict(
                f"'{sym.name}' is reserved for reduced equations", name=sym.name
            )


@dataclass(frozen=True)
class FirstOrderSystem:
    """w_i' = W_i(t, w_1..w_n) for i = 1..n."""
    variables: Tuple[sympy.Symbol, ...]
    rhs: Tuple[sympy.Expr, ...]

    def __post_init__(self):
        if not self.variables:
            raise ValueError('a system needs at least one variable')
        if len(self.variables) != len(self.rhs):
            raise ValueError(
                f'{len(self.variables)} variables but {len(self.rhs)} right-hand sides'
            )
        for v in self.variables:
            if info(v).kind is not SymbolKind.COORDINATE:
                dependent(v.name)
        for w in self.rhs:
            _reject_placeholders(w)
            for sym, _ in _coordinates(w):
                if sym not in self.variables:
                    raise HigherDerivativeOnRHS(
                        f"right-hand side contains the derivative coordinate {sym.name}"
                    )
        object.__setattr__(self, 'rhs', tuple(normalize(w) for w in self.rhs))

    @property
    def dimension(self) -> int:
        return len(self.variables)

    @property
    def dependents(self) -> FrozenSet[str]:
        return frozenset(info(v).name for v in self.variables)

    def __str__(self) -> str:
        from ..parser.render import render
        return '; '.join(f"{v.name}' = {render(w)}" for v, w in zip(self.variables, self.rhs))


@dataclass(frozen=True)
class SecondOrderODE:
    """y'' = phi(t, y, y')."""
    dependent: str
    phi: sympy.Expr
    source: str = field(default='', compare=False)

    def __post_init__(self):
        dependent(self.dependent)
        _reject_placeholders(self.phi)
        for sym, si in _coordinates(self.phi):
            if si.name != self.dependent or si.order >= 2:
                raise HigherDerivativeOnRHS(
                    f"{sym.name} may not appear on the right-hand side",
                    text=self.source,
                )
        object.__setattr__(self, 'phi', normalize(self.phi))

    @property
    def dependents(self) -> FrozenSet[str]:
        return frozenset({self.dependent})

    @property
    def y(self) -> sympy.Symbol:
        return sympy.Symbol(self.dependent)

    @property
    def yp(self) -> sympy.Symbol:
        return coordinate(self.dependent, 1)

    @property
    def ypp(self) -> sympy.Symbol:
        return coordinate(self.dependent, 2)

    def system(self) -> FirstOrderSystem:
        """The implied system (y, y') -> (y', phi)."""
        return FirstOrderSystem((self.y, self.yp), (self.yp, self.phi))

    def __str__(self) -> str:
        from ..parser.render import render
        return f"{self.dependent}'' = {render(self.phi)}"


@dataclass(frozen=True)
class Multiplier:
    """A Jacobi last multiplier m with omega = log(1/m).

    ``omega`` is kept separately from ``m`` because it usually holds an
    antiderivative marker that m would hide under exp.
    """
    divergence: sympy.Expr
    m: sympy.Expr
    omega: sympy.Expr
    zero_divergence: bool = False
