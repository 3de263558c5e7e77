"""
Lambda-prolongation and the determining equation.

For X = tau*d/dt + eta*d/dy and a function lambda(t, y, y'):

    eta1 = (D + lambda) eta  - y'  (D + lambda) tau
    eta2 = (D + lambda) eta1 - y'' (D + lambda) tau

with D the total derivative and y'' replaced by phi. The pair (X, lambda)
is a lambda-symmetry of y'' = phi when

    eta2 - tau*phi_t - eta*phi_y - eta1*phi_y'

vanishes identically.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

import sympy

from ..expr.calculus import diff_partial, total_derivative
from ..expr.canonical import normalize
from ..expr.symbols import T
from .models import PointField


logger = logging.getLogger(__name__)


def _plus_lambda(f, lam, ode) -> sympy.Expr:
    return total_derivative(f, ode) + lam * f


def lambda_prolong(X: PointField, lam, order: int, ode) -> List[sympy.Expr]:
    """[eta1] or [eta1, eta2], on-shell."""
    if order not in (1, 2):
        raise ValueError(f'prolongation order must be 1 or 2, got {order}')
    lam = sympy.sympify(lam)
    d_tau = _plus_lambda(X.tau, lam, ode)
    eta1 = normalize(_plus_lambda(X.eta, lam, ode) - ode.yp * d_tau)
    if order == 1:
        return [eta1]
    eta2 = normalize(_plus_lambda(eta1, lam, ode) - ode.phi * d_tau)
    return [eta1, eta2]


def determining_residual(ode, X: PointField, lam) -> sympy.Expr:
    """Zero iff (X, lam) is a lambda-symmetry of ``ode``."""
    eta1, eta2 = lambda_prolong(X, lam, 2, ode)
    phi = ode.phi
    return normalize(
        eta2
        - X.tau * diff_partial(phi, T, ode.dependents)
        - X.eta * diff_partial(phi, ode.y)
        - eta1 * diff_partial(phi, ode.yp)
    )


@dataclass(frozen=True)
class DeterminingOperator:
    """The determining residual as a linear operator on (tau, eta).

    Coefficients of tau, eta and their derivatives up to order two are
    computed once per (ode, lambda); applying the operator to a candidate
    then only needs the candidate's own derivatives.
    """
    tau_coeffs: Tuple[sympy.Expr, ...]
    eta_coeffs: Tuple[sympy.Expr, ...]
    y: sympy.Symbol
    dependents: FrozenSet[str] = frozenset()

    @classmethod
    def build(cls, ode, lam) -> 'DeterminingOperator':
        lam = normalize(lam)
        yp, phi = ode.yp, ode.phi
        phi_t = diff_partial(phi, T, ode.dependents)
        phi_y = diff_partial(phi, ode.y)
        phi_yp = diff_partial(phi, yp)
        d_lam = total_derivative(lam, ode)

        # order: f, f_t, f_y, f_tt, f_ty, f_yy
        eta_coeffs = (
            d_lam + lam ** 2 - phi_y - lam * phi_yp,
            2 * lam - phi_yp,
            phi + 2 * lam * yp - yp * phi_yp,
            sympy.S.One,
            2 * yp,
            yp ** 2,
        )
        tau_coeffs = (
            -2 * phi * lam - yp * (d_lam + lam ** 2) - phi_t + yp * lam * phi_yp,
            -2 * phi - 2 * lam * yp + yp * phi_yp,
            -3 * phi * yp - 2 * lam * yp ** 2 + yp ** 2 * phi_yp,
            -yp,
            -2 * yp ** 2,
            -yp ** 3,
        )
        return cls(
            tuple(normalize(c) for c in tau_coeffs),
            tuple(normalize(c) for c in eta_coeffs),
            ode.y,
            ode.dependents,
        )

    def _jet(self, f) -> Tuple[sympy.Expr, ...]:
        f_t = diff_partial(f, T, self.dependents)
        f_y = diff_partial(f, self.y)
        return (
            sympy.sympify(f),
            f_t,
            f_y,
            diff_partial(f_t, T, self.dependents),
            diff_partial(f_t, self.y),
            diff_partial(f_y, self.y),
        )

    def apply_tau(self, f) -> sympy.Expr:
        """Residual of the field (f, 0), unnormalized."""
        return sympy.Add(*[c * d for c, d in zip(self.tau_coeffs, self._jet(f))])

    def apply_eta(self, f) -> sympy.Expr:
        """Residual of the field (0, f), unnormalized."""
        return sympy.Add(*[c * d for c, d in zip(self.eta_coeffs, self._jet(f))])

    def apply(self, X: PointField) -> sympy.Expr:
        return normalize(self.apply_tau(X.tau) + self.apply_eta(X.eta))
