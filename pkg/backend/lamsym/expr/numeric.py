"""
Evaluation fallback for the zero test.

Forms whose generators include logarithms, opaque functions or constant
radicals may vanish through kernel identities the canonical form does not
see. Those are decided by evaluating the numerator at seeded pseudo-random
rational points with 50 significant digits.
"""

import logging
from typing import List

import mpmath
import numpy as np
import sympy

from .. import diagnostics
from ..config import Settings, get_settings
from ..errors import Undecided


logger = logging.getLogger(__name__)

WORKING_DIGITS = 50
RELATIVE_TOLERANCE = mpmath.mpf(10) ** -35


def random_rationals(rng: np.random.Generator, count: int, bound: int) -> List[mpmath.mpf]:
    """``count`` rationals p/q with p in [-bound, bound] and q in [-bound, bound] \\ {0}."""
    numers = rng.integers(-bound, bound + 1, size=count)
    denoms = rng.integers(1, bound + 1, size=count) * rng.choice([-1, 1], size=count)
    return [mpmath.mpf(int(p)) / int(q) for p, q in zip(numers, denoms)]


def _finite(value) -> bool:
    return not (mpmath.isinf(value) or mpmath.isnan(value))


def sampled_zero(form, settings: Settings = None):
    """Decide whether a canonical form vanishes by evaluation.

    Raises Undecided when too many sample points hit poles or
    non-finite values.
    """
    from .canonical import ZeroTest

    settings = settings or get_settings()
    terms = [sympy.Integer(c) * form.monomial_expr(mon) for mon, c in form.numer]
    denom = form.denom_expr()
    symbols = set(denom.free_symbols)
    for term in terms:
        symbols |= term.free_symbols
    symbols = sorted(symbols, key=lambda s: s.name)

    numer_fn = sympy.lambdify(symbols, terms, modules='mpmath', dummify=True)
    denom_fn = sympy.lambdify(symbols, denom, modules='mpmath', dummify=True)
    rng = np.random.default_rng(settings.zero_test_seed)

    accepted = 0
    attempts = 0
    with mpmath.workdps(WORKING_DIGITS):
        while accepted < settings.zero_test_points:
            if attempts >= settings.zero_test_attempts:
                raise Undecided(
                    f'zero test hit poles at {attempts} sample points',
                    expr=form.to_expr(),
                )
            attempts += 1
            point = random_rationals(rng, len(symbols), settings.zero_test_bound)
            try:
                den = denom_fn(*point)
                values = numer_fn(*point)
            except (ZeroDivisionError, ValueError, OverflowError):
                continue
            if not _finite(den) or abs(den) == 0:
                continue
            if not all(_finite(v) for v in values):
                continue
            total = mpmath.fsum(values)
            scale = max([mpmath.mpf(1)] + [abs(v) for v in values])
            if abs(total) > RELATIVE_TOLERANCE * scale:
                return ZeroTest(False)
            accepted += 1

    logger.debug('zero decided by evaluation at %d points', accepted)
    diagnostics.record(diagnostics.PROBABILISTIC, sympy.sstr(form.to_expr()))
    return ZeroTest(True, probabilistic=True)
