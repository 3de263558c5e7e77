"""
Point fields, lambda-symmetries and ansatz bases.
"""

from dataclasses import dataclass
from typing import List, Tuple

import sympy

from ..errors import NotASymmetry
from ..expr.canonical import canonical, normalize
from ..expr.symbols import SymbolKind, T, info


def _has_coordinates(expr: sympy.Expr) -> bool:
    return any(info(s).kind is SymbolKind.COORDINATE for s in expr.free_symbols)


@dataclass(frozen=True)
class PointField:
    """X = tau*d/dt + eta*d/dy with tau, eta functions of (t, y)."""
    tau: sympy.Expr
    eta: sympy.Expr

    def __post_init__(self):
        tau, eta = normalize(self.tau), normalize(self.eta)
        if _has_coordinates(tau) or _has_coordinates(eta):
            raise NotASymmetry('point field components may not hold derivative coordinates',
                               tau=tau, eta=eta)
        object.__setattr__(self, 'tau', tau)
        object.__setattr__(self, 'eta', eta)

    def scaled(self, factor) -> 'PointField':
        return PointField(self.tau * factor, self.eta * factor)

    def __add__(self, other: 'PointField') -> 'PointField':
        return PointField(self.tau + other.tau, self.eta + other.eta)

    def __str__(self) -> str:
        from ..parser.render import render
        return f'({render(self.tau)}, {render(self.eta)})'


@dataclass(frozen=True)
class LambdaSymmetry:
    """A point field with its lambda and characteristic Q = eta - y'*tau."""
    field: PointField
    lam: sympy.Expr
    characteristic: sympy.Expr

    @classmethod
    def of(cls, ode, field: PointField, lam) -> 'LambdaSymmetry':
        lam = normalize(lam)
        return cls(field, lam, normalize(field.eta - ode.yp * field.tau))

    def __str__(self) -> str:
        from ..parser.render import render
        return f'{self.field} with lambda = {render(self.lam)}'


@dataclass(frozen=True)
class AnsatzBasis:
    """Candidate functions for a linear ansatz.

    ``candidates()`` is the span actually used: the window monomials over
    ``variables`` (exponents in [-window, window], or [0, window] for the
    names in ``nonnegative``) times 1 and each ``factors`` entry, followed by
    ``generators``. Candidates equal up to a rational factor are kept once.
    """
    generators: Tuple[sympy.Expr, ...] = ()
    window: int = 0
    variables: Tuple[sympy.Symbol, ...] = (T,)
    factors: Tuple[sympy.Expr, ...] = ()
    nonnegative: Tuple[sympy.Symbol, ...] = ()

    def monomials(self) -> List[sympy.Expr]:
        out = [sympy.S.One]
        for v in self.variables:
            low = 0 if v in self.nonnegative else -self.window
            out = [m * v ** k for m in out for k in range(low, self.window + 1)]
        return out

    def candidates(self) -> List[sympy.Expr]:
        raw = list(self.monomials())
        for f in self.factors:
            raw.extend(m * f for m in self.monomials())
        raw.extend(self.generators)
        seen = set()
        out = []
        for expr in raw:
            form = canonical(sympy.sympify(expr))
            if form.is_zero or form.shape in seen:
                continue
            seen.add(form.shape)
            out.append(form.to_expr())
        return out

    def __len__(self) -> int:
        return len(self.candidates())
