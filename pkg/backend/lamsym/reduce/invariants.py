"""
First-order invariants of a lambda-prolonged field by linear ansatz.
"""

import itertools
import logging
from typing import List, Optional, Sequence

import sympy

from ..config import get_settings
from ..errors import InsufficientBasis, VerificationFailure
from ..expr.calculus import diff_partial
from ..expr.canonical import is_zero, normalize
from ..expr.collect import linear_relations
from ..expr.symbols import T
from ..parser.render import render
from ..symmetry.models import AnsatzBasis, LambdaSymmetry
from ..symmetry.prolong import lambda_prolong
from ..symmetry.solver import point_kernels
from .models import InvariantPair


logger = logging.getLogger(__name__)


def invariant_basis(ode, window: Optional[int] = None, hints: Sequence = ()) -> AnsatzBasis:
    """t^a*y^b*y'^c with a, b in [-window, window] and c in [0, window], times 1
    and each kernel or arbitrary function of phi, then ``hints``."""
    window = get_settings().invariant_window if window is None else window
    return AnsatzBasis(
        generators=tuple(sympy.sympify(h) for h in hints),
        window=window,
        variables=(T, ode.y, ode.yp),
        factors=tuple(point_kernels(ode)),
        nonnegative=(ode.yp,),
    )


def apply_prolonged(ode, S: LambdaSymmetry, f, eta1=None) -> sympy.Expr:
    """pr X (f) = tau*f_t + eta*f_y + eta1*f_y', unnormalized."""
    if eta1 is None:
        eta1, = lambda_prolong(S.field, S.lam, 1, ode)
    return (
        S.field.tau * diff_partial(f, T, ode.dependents)
        + S.field.eta * diff_partial(f, ode.y)
        + eta1 * diff_partial(f, ode.yp)
    )


def independent(ode, a, b) -> bool:
    """Some 2x2 minor of d(a, b)/d(t, y, y') is nonzero."""
    variables = (T, ode.y, ode.yp)
    rows = [[diff_partial(e, v, ode.dependents) for v in variables] for e in (a, b)]
    for i, j in itertools.combinations(range(3), 2):
        if not is_zero(rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]):
            return True
    return False


def _rank_key(expr):
    text = render(expr)
    return (len(text), text)


def find_invariants(ode, S: LambdaSymmetry, basis: AnsatzBasis) -> List[InvariantPair]:
    """Invariant pairs of pr X, preferred pair first.

    Order-0 invariants are preferred for t1, y'-dependent ones for y1; with
    tau = 0 and no order-0 invariant in the basis, t1 = t is used.
    """
    candidates = [c for c in basis.candidates() if c.free_symbols]
    eta1, = lambda_prolong(S.field, S.lam, 1, ode)
    columns = [apply_prolonged(ode, S, c, eta1) for c in candidates]
    invariants = []
    for vec in linear_relations(columns):
        expr = normalize(sympy.Add(*[
            sympy.Rational(c.numerator, c.denominator) * b for c, b in zip(vec, candidates) if c
        ]))
        if expr.free_symbols:
            invariants.append(expr)

    order0 = sorted((e for e in invariants if ode.yp not in e.free_symbols), key=_rank_key)
    order1 = sorted((e for e in invariants if ode.yp in e.free_symbols), key=_rank_key)
    if not order0 and is_zero(S.field.tau):
        order0 = [T]
    logger.debug('invariants: %d of order 0, %d of order 1', len(order0), len(order1))

    firsts = order0 + order1
    pairs = []
    for y1 in order1:
        for t1 in firsts:
            if t1 == y1:
                continue
            if independent(ode, t1, y1):
                pairs.append(InvariantPair(t1, y1))
                break
    if not pairs:
        raise InsufficientBasis(
            f'fewer than two independent invariants among {len(candidates)} candidates',
            basis_size=len(candidates),
        )
    return pairs


def certify_pair(ode, S: LambdaSymmetry, pair: InvariantPair) -> InvariantPair:
    """Check a caller-supplied pair against pr X; VerificationFailure otherwise."""
    eta1, = lambda_prolong(S.field, S.lam, 1, ode)
    for name, expr in (('t1', pair.t1), ('y1', pair.y1)):
        if not is_zero(apply_prolonged(ode, S, expr, eta1)):
            raise VerificationFailure(f'{name} = {render(expr)} is not an invariant of {S}')
    if not independent(ode, pair.t1, pair.y1):
        raise VerificationFailure(f'invariants {pair} are functionally dependent')
    return pair
