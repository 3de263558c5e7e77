"""
Linear-ansatz solver for the determining equation.

tau and eta are expanded over the candidates of an AnsatzBasis with
unknown rational coefficients. Because the determining residual is linear
in (tau, eta), the residual of the expansion is the same combination of
per-candidate residuals, and the coefficient vectors that make it vanish
are the exact nullspace of the coefficient-matching system.

Usage:
    from backend.lamsym.symmetry import default_basis, solve_determining

    basis = default_basis(ode, window=2, hints=[parse_expr("f(t)*y^(p-1)")])
    symmetries = solve_determining(ode, lam, basis)
"""

import logging
from typing import List, Optional, Sequence

import sympy

from ..config import get_settings
from ..errors import EmptyResult, NotRationalInYPrime, VerificationFailure
from ..expr.canonical import canonical, is_zero
from ..expr.collect import linear_relations
from ..expr.symbols import SymbolKind, T, info
from .models import AnsatzBasis, LambdaSymmetry, PointField
from .prolong import DeterminingOperator, determining_residual


logger = logging.getLogger(__name__)


def point_kernels(ode) -> List[sympy.Expr]:
    """Kernel atoms and arbitrary functions of phi that depend on (t, y) only."""
    form = canonical(ode.phi)
    out = []
    for atom in form.atoms:
        if ode.yp not in atom.value.free_symbols:
            out.append(atom.value)
    for sym in sorted(ode.phi.free_symbols, key=lambda s: s.name):
        if info(sym).kind is SymbolKind.FUNCTION:
            out.append(sym)
    return out


def default_basis(ode, window: Optional[int] = None, hints: Sequence = ()) -> AnsatzBasis:
    """Monomials t^a*y^b over the window, their products with every kernel
    and arbitrary function of phi, then ``hints``."""
    window = get_settings().window if window is None else window
    return AnsatzBasis(
        generators=tuple(sympy.sympify(h) for h in hints),
        window=window,
        variables=(T, ode.y),
        factors=tuple(point_kernels(ode)),
    )


def _check_rational_in_yprime(ode) -> None:
    for atom in canonical(ode.phi).atoms:
        if ode.yp in atom.value.free_symbols:
            raise NotRationalInYPrime(
                f'{ode.yp.name} appears inside {atom.value}', phi=ode.phi,
            )


def solve_determining(ode, lam, basis: AnsatzBasis) -> List[LambdaSymmetry]:
    """All lambda-symmetries (X, lam) with X in the span of ``basis``.

    One symmetry per nullspace vector, in reduced echelon order with tau
    coefficients before eta coefficients. Raises EmptyResult when only the
    zero field fits, which means the basis is too small.
    """
    _check_rational_in_yprime(ode)
    candidates = basis.candidates()
    if not candidates:
        raise EmptyResult('the ansatz basis is empty')
    op = DeterminingOperator.build(ode, lam)
    n = len(candidates)
    logger.info('determining system: %d candidates, %d unknowns', n, 2 * n)

    columns = [op.apply_tau(b) for b in candidates] + [op.apply_eta(b) for b in candidates]
    relations = linear_relations(columns)
    if not relations:
        raise EmptyResult(f'no lambda-symmetry in a basis of {n} candidates', basis_size=n)

    out = []
    for vec in relations:
        tau = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * b
                          for c, b in zip(vec[:n], candidates) if c])
        eta = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * b
                          for c, b in zip(vec[n:], candidates) if c])
        field = PointField(tau, eta)
        if not is_zero(determining_residual(ode, field, lam)):
            raise VerificationFailure(f'solver output {field} fails the determining equation')
        out.append(LambdaSymmetry.of(ode, field, lam))
    logger.info('found %d lambda-symmetries', len(out))
    return out
