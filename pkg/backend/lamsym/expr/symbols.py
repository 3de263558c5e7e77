"""
Symbol interner.

Every symbol the library creates is a plain ``sympy.Symbol`` whose name
encodes its kind:

    t            independent variable
    y            dependent variable or parameter, depending on the equation
    y', y''      derivative coordinates of orders 1, 2
    f(t), f'(t)  arbitrary functions of t and their derivatives
    Int(r)       antiderivative marker for the integral of r dt
    t1, y1       placeholders of a reduced equation dy1/dt1 = G(t1, y1)

A plain name is a dependent variable only relative to an equation: every
decoding helper takes the set of dependent names in play, and names that
carry derivative coordinates in the expression at hand are always
dependent. The only process-wide state is the registry of antiderivative
markers, keyed by the rendered integrand and guarded by a lock.

Usage:
    from backend.lamsym.expr.symbols import coordinate, function, info

    yp = coordinate('y', 1)
    info(yp).kind                        # SymbolKind.COORDINATE
    info(sympy.Symbol('y'), {'y'}).kind  # SymbolKind.DEPENDENT
"""

import re
import threading
from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Dict, FrozenSet, Optional

import sympy

from ..errors import SymbolKindConflict


INDEPENDENT_NAME = 't'
BUILTIN_NAMES = frozenset({'exp', 'log', 'Int'})
PLACEHOLDER_NAMES = ('t1', 'y1')

_IDENT = r'[A-Za-z_][A-Za-z0-9_]*'
_PLAIN_RE = re.compile(rf'^{_IDENT}$')
_COORDINATE_RE = re.compile(rf"^({_IDENT})('+)$")
_FUNCTION_RE = re.compile(rf"^({_IDENT})('*)\(t\)$")
_MARKER_PREFIX = 'Int('

Dependents = AbstractSet[str]
NO_DEPENDENTS: FrozenSet[str] = frozenset()


class SymbolKind(str, Enum):
    INDEPENDENT = 'independent-variable'
    DEPENDENT = 'dependent-variable'
    COORDINATE = 'derivative-coordinate'
    PARAMETER = 'parameter'
    FUNCTION = 'arbitrary-function'
    ANTIDERIVATIVE = 'antiderivative-marker'
    PLACEHOLDER = 'reduction-placeholder'


@dataclass(frozen=True)
class SymbolInfo:
    """Decoded kind of an interned symbol.

    ``name`` is the base name (``y`` for ``y''``), ``order`` the derivative
    order for coordinates and arbitrary functions.
    """
    name: str
    kind: SymbolKind
    order: int = 0
    integrand: Optional[sympy.Expr] = None


class SymbolTable:
    """Thread-safe registry of antiderivative markers.

    A marker's name is derived from its normalized integrand, so the same
    integrand always yields the same marker in every process.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._markers: Dict[sympy.Symbol, sympy.Expr] = {}

    def marker(self, integrand: sympy.Expr) -> sympy.Symbol:
        sym = sympy.Symbol(f"{_MARKER_PREFIX}{sympy.sstr(integrand)})")
        with self._lock:
            known = self._markers.setdefault(sym, integrand)
        if known != integrand:
            raise SymbolKindConflict(f"marker name clash for {sym.name}", name=sym.name)
        return sym

    def integrand(self, sym: sympy.Symbol) -> sympy.Expr:
        with self._lock:
            try:
                return self._markers[sym]
            except KeyError:
                raise SymbolKindConflict(f"unknown antiderivative marker {sym.name}", name=sym.name)


SYMBOLS = SymbolTable()

T = sympy.Symbol(INDEPENDENT_NAME)


def _check_identifier(name: str) -> None:
    if not _PLAIN_RE.match(name) or name in BUILTIN_NAMES:
        raise SymbolKindConflict(f"'{name}' is not a usable identifier", name=name)


def _check_variable(name: str) -> None:
    _check_identifier(name)
    if name == INDEPENDENT_NAME:
        raise SymbolKindConflict(f"'{name}' is the independent variable", name=name)
    if name in PLACEHOLDER_NAMES:
        raise SymbolKindConflict(f"'{name}' is reserved for reduced equations", name=name)


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def independent() -> sympy.Symbol:
    return T


def dependent(name: str) -> sympy.Symbol:
    """Symbol of the dependent variable ``name``."""
    _check_variable(name)
    return sympy.Symbol(name)


def parameter(name: str) -> sympy.Symbol:
    _check_variable(name)
    return sympy.Symbol(name)


def placeholder(name: str) -> sympy.Symbol:
    if name not in PLACEHOLDER_NAMES:
        raise SymbolKindConflict(f"'{name}' is not a reduction placeholder", name=name)
    return sympy.Symbol(name)


def coordinate(name: str, order: int) -> sympy.Symbol:
    """Derivative coordinate of order ``order`` >= 1 of the variable ``name``."""
    if order < 1:
        raise ValueError(f"derivative coordinates start at order 1, got {order}")
    _check_variable(name)
    return sympy.Symbol(name + "'" * order)


def function(name: str, order: int = 0) -> sympy.Symbol:
    """Arbitrary function ``name`` of t, differentiated ``order`` times."""
    _check_identifier(name)
    if order < 0:
        raise ValueError(f"derivative order must be >= 0, got {order}")
    if name == INDEPENDENT_NAME:
        raise SymbolKindConflict("'t' cannot name an arbitrary function", name=name)
    return sympy.Symbol(name + "'" * order + '(t)')


def antiderivative(integrand) -> sympy.Symbol:
    """Marker R with the single rule D_t R = integrand.

    One marker exists per distinct normalized integrand.
    """
    from .canonical import normalize
    return SYMBOLS.marker(normalize(integrand))


# ============================================================================
# DECODING
# ============================================================================

def info(sym: sympy.Symbol, dependents: Dependents = NO_DEPENDENTS) -> SymbolInfo:
    """Decode the kind of ``sym``; plain names in ``dependents`` are dependent."""
    name = sym.name
    if name == INDEPENDENT_NAME:
        return SymbolInfo(name, SymbolKind.INDEPENDENT)
    if name in PLACEHOLDER_NAMES:
        return SymbolInfo(name, SymbolKind.PLACEHOLDER)
    if name.startswith(_MARKER_PREFIX):
        return SymbolInfo(name, SymbolKind.ANTIDERIVATIVE, integrand=SYMBOLS.integrand(sym))
    match = _COORDINATE_RE.match(name)
    if match:
        return SymbolInfo(match.group(1), SymbolKind.COORDINATE, len(match.group(2)))
    match = _FUNCTION_RE.match(name)
    if match:
        return SymbolInfo(match.group(1), SymbolKind.FUNCTION, len(match.group(2)))
    if _PLAIN_RE.match(name):
        kind = SymbolKind.DEPENDENT if name in dependents else SymbolKind.PARAMETER
        return SymbolInfo(name, kind)
    raise SymbolKindConflict(f"'{name}' is not an interned symbol", name=name)


def dependents_of(expr) -> FrozenSet[str]:
    """Base names of the derivative coordinates in ``expr`` and its markers."""
    out = set()
    seen = set()
    pending = [sympy.sympify(expr)]
    while pending:
        for sym in pending.pop().free_symbols:
            si = info(sym)
            if si.kind is SymbolKind.COORDINATE:
                out.add(si.name)
            elif si.kind is SymbolKind.ANTIDERIVATIVE and sym not in seen:
                seen.add(sym)
                pending.append(si.integrand)
    return frozenset(out)


def jet_successor(sym: sympy.Symbol, dependents: Dependents = NO_DEPENDENTS) -> Optional[sympy.Expr]:
    """What D_t maps ``sym`` to, or None for t, parameters and placeholders."""
    si = info(sym, dependents)
    if si.kind is SymbolKind.DEPENDENT:
        return coordinate(si.name, 1)
    if si.kind is SymbolKind.COORDINATE:
        return coordinate(si.name, si.order + 1)
    if si.kind is SymbolKind.FUNCTION:
        return function(si.name, si.order + 1)
    if si.kind is SymbolKind.ANTIDERIVATIVE:
        return si.integrand
    return None


def depends_on_state(expr: sympy.Expr, dependents: Dependents = NO_DEPENDENTS) -> bool:
    """True when ``expr`` holds a dependent variable or derivative coordinate,
    directly or through an antiderivative marker's integrand."""
    for s in expr.free_symbols:
        si = info(s, dependents)
        if si.kind in (SymbolKind.DEPENDENT, SymbolKind.COORDINATE):
            return True
        if si.kind is SymbolKind.ANTIDERIVATIVE and depends_on_state(si.integrand, dependents):
            return True
    return False
