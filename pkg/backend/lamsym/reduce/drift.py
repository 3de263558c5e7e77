"""
Numeric validation of first integrals along RK4 trajectories.

The equation is integrated as the system (y, y') -> (y', phi). Every
antiderivative marker left in the integral becomes one more state
component R with R' equal to its integrand and R(t0) = 0.

Usage:
    from backend.lamsym.reduce import numeric_drift

    drift = numeric_drift(ode, integral, function_bindings('q', t),
                          ic=(0.0, 1.0, 0.0), t_end=1.0, step=1e-3)
"""

import logging
import math
from typing import Callable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import sympy

from ..config import Settings, get_settings
from ..errors import NonFiniteState, NumericFailure, PoleEncountered
from ..expr.calculus import substitute
from ..expr.canonical import canonical
from ..expr.symbols import SymbolKind, T, info
from .models import FirstIntegral


logger = logging.getLogger(__name__)


def _markers(exprs: Sequence[sympy.Expr]) -> List[sympy.Symbol]:
    """Markers in ``exprs`` and, transitively, in their integrands."""
    found = {}
    pending = list(exprs)
    while pending:
        expr = pending.pop()
        for sym in expr.free_symbols:
            si = info(sym)
            if si.kind is SymbolKind.ANTIDERIVATIVE and sym not in found:
                found[sym] = si.integrand
                pending.append(si.integrand)
    return sorted(found, key=lambda s: s.name)


class _Compiled:
    """Numpy callables over (t, y, y', R_1, ..., R_k)."""

    def __init__(self, ode, phi, integral, settings: Settings):
        self.markers = _markers([phi, integral])
        self.args = [T, ode.y, ode.yp, *self.markers]
        integrands = [info(m).integrand for m in self.markers]
        exprs = [phi, integral, *integrands]
        unbound = set().union(*(e.free_symbols for e in exprs)) - set(self.args)
        if unbound:
            names = ', '.join(sorted(s.name for s in unbound))
            raise NumericFailure(f'numeric evaluation needs values for {names}')

        def compile_(expr) -> Callable:
            return sympy.lambdify(self.args, expr, modules='numpy', dummify=True)

        self.phi = compile_(phi)
        self.integral = compile_(integral)
        self.integrands = [compile_(e) for e in integrands]
        self.denominators = [compile_(canonical(e).denom_expr()) for e in exprs]
        self.tolerance = settings.pole_tolerance

    def real(self, t: float, value) -> float:
        """``value`` as a float; a non-negligible imaginary part is an error."""
        value = complex(value)
        if abs(value.imag) > self.tolerance * max(1.0, abs(value.real)):
            raise NonFiniteState(f'state left the real line at t = {t:g}', t=t)
        return value.real

    def derivative(self, t: float, state: np.ndarray) -> np.ndarray:
        values = [state[1], self.phi(t, *state)] + [f(t, *state) for f in self.integrands]
        return np.array([self.real(t, v) for v in values])

    def check(self, t: float, state: np.ndarray) -> None:
        if not np.all(np.isfinite(state)):
            raise NonFiniteState(f'state became non-finite at t = {t:g}', t=t)
        for den in self.denominators:
            if abs(complex(den(t, *state))) <= self.tolerance:
                raise PoleEncountered(f'trajectory reached a pole at t = {t:g}', t=t)


def _rk4_step(f, t: float, state: np.ndarray, h: float) -> np.ndarray:
    k1 = f(t, state)
    k2 = f(t + h / 2, state + h / 2 * k1)
    k3 = f(t + h / 2, state + h / 2 * k2)
    k4 = f(t + h, state + h * k3)
    return state + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_trajectory(
    ode,
    integral: FirstIntegral,
    specialization: Optional[Mapping] = None,
    ic: Tuple[float, float, float] = (0.0, 1.0, 0.0),
    t_end: float = 1.0,
    step: float = 1e-3,
    settings: Optional[Settings] = None,
) -> pd.DataFrame:
    """Fixed-step RK4 trajectory with the integral evaluated at every node.

    Columns: t, y, y', I, then one column per antiderivative marker.
    """
    settings = settings or get_settings()
    bindings = dict(specialization or {})
    phi = substitute(ode.phi, bindings)
    value = substitute(integral.i, bindings)
    compiled = _Compiled(ode, phi, value, settings)

    t0, y0, yp0 = (float(v) for v in ic)
    steps = max(1, int(round((t_end - t0) / step)))
    h = (t_end - t0) / steps
    state = np.array([y0, yp0] + [0.0] * len(compiled.markers))

    rows = []
    t = t0
    for k in range(steps + 1):
        compiled.check(t, state)
        current = complex(compiled.integral(t, *state))
        if not math.isfinite(current.real) or not math.isfinite(current.imag):
            raise NonFiniteState(f'integral became non-finite at t = {t:g}', t=t)
        rows.append([t, *state[:2], compiled.real(t, current), *state[2:]])
        if k == steps:
            break
        state = _rk4_step(compiled.derivative, t, state, h)
        t = t0 + (k + 1) * h

    columns = ['t', ode.y.name, ode.yp.name, 'I'] + [m.name for m in compiled.markers]
    logger.debug('integrated %d steps of size %g', steps, h)
    return pd.DataFrame(rows, columns=columns)


def numeric_drift(
    ode,
    integral: FirstIntegral,
    specialization: Optional[Mapping] = None,
    ic: Tuple[float, float, float] = (0.0, 1.0, 0.0),
    t_end: float = 1.0,
    step: float = 1e-3,
    settings: Optional[Settings] = None,
) -> float:
    """max |I(t) - I(t0)| / max(1, |I(t0)|) along the RK4 trajectory."""
    table = integrate_trajectory(ode, integral, specialization, ic, t_end, step, settings)
    values = table['I'].to_numpy()
    i0 = values[0]
    return float(np.max(np.abs(values - i0)) / max(1.0, abs(i0)))
