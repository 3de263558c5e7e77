"""
Equivalence of lambda-symmetries, certification and span membership.

Two lambda-symmetries with characteristics Q1, Q2 are equivalent iff

    Q1*(A + lambda2)(Q2) - Q2*(A + lambda1)(Q1) = 0

where A = d/dt + y'*d/dy + phi*d/dy' is the total derivative on solutions.
"""

import logging
from typing import List, Sequence

import sympy

from ..errors import NotASymmetry
from ..expr.calculus import total_derivative
from ..expr.canonical import is_zero, normalize
from ..expr.collect import linear_relations
from .models import LambdaSymmetry, PointField
from .prolong import determining_residual


logger = logging.getLogger(__name__)


def certify(ode, field: PointField, lam, label: str = '') -> LambdaSymmetry:
    """LambdaSymmetry for (field, lam), or NotASymmetry naming the pair."""
    residual = determining_residual(ode, field, lam)
    if not is_zero(residual):
        raise NotASymmetry(
            f'{label or field} is not a lambda-symmetry of {ode}',
            residual=residual,
        )
    return LambdaSymmetry.of(ode, field, lam)


def equivalence_residual(ode, s1: LambdaSymmetry, s2: LambdaSymmetry) -> sympy.Expr:
    q1, q2 = s1.characteristic, s2.characteristic
    a_q1 = total_derivative(q1, ode)
    a_q2 = total_derivative(q2, ode)
    return normalize(q1 * (a_q2 + s2.lam * q2) - q2 * (a_q1 + s1.lam * q1))


def is_equivalent(ode, s1: LambdaSymmetry, s2: LambdaSymmetry) -> bool:
    return is_zero(equivalence_residual(ode, s1, s2))


def equivalence_classes(ode, symmetries: Sequence[LambdaSymmetry]) -> List[int]:
    """Class label for each symmetry; labels are numbered by first occurrence."""
    labels: List[int] = []
    representatives: List[LambdaSymmetry] = []
    for s in symmetries:
        for k, rep in enumerate(representatives):
            if is_equivalent(ode, rep, s):
                labels.append(k)
                break
        else:
            representatives.append(s)
            labels.append(len(representatives) - 1)
    logger.debug('%d symmetries fall in %d classes', len(symmetries), len(representatives))
    return labels


def in_span(target: PointField, fields: Sequence[PointField]) -> bool:
    """Whether ``target`` is a rational combination of ``fields``.

    Each field is folded into tau + zeta*eta with a fresh symbol zeta, so
    one linear relation settles both components at once.
    """
    zeta = sympy.Dummy('zeta')
    exprs = [target.tau + zeta * target.eta] + [f.tau + zeta * f.eta for f in fields]
    return any(vec[0] != 0 for vec in linear_relations(exprs))
