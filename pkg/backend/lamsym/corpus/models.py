"""
Corpus entry and per-entry result models.
"""

import math
import re
from typing import Dict, List, Optional, Tuple

import sympy
from pydantic import BaseModel

from ..expr.calculus import function_bindings
from ..parser import parse_expr, parse_ode
from ..report import AnalysisOptions


_BINDING_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)(\(t\))?\s*=\s*(.+?)\s*$")


class CorpusEntry(BaseModel):
    """One worked equation with everything known about it.

    Symmetries are (tau, eta) pairs for lambda_J; ``equivalent`` holds
    (tau, eta, lambda) triples with other lambdas that must certify and be
    equivalent to the first symmetry.
    """
    id: str
    title: str = ''
    ode_text: str
    expected_lambda: str
    expected_symmetries: List[Tuple[str, str]] = []
    equivalent: List[Tuple[str, str, str]] = []
    expected_integrals: List[str] = []
    basis_hints: List[str] = []
    window: Optional[int] = None
    invariant_hints: List[str] = []
    invariant_window: Optional[int] = None
    reduce_hints: List[str] = []
    reduce_window: Optional[int] = None
    reduce_with: Optional[Tuple[str, str]] = None
    pair: Optional[Tuple[str, str]] = None
    reduced: Optional[str] = None
    specialize: Optional[str] = None
    ic: Optional[Tuple[float, float, float]] = None
    t_end: Optional[float] = None
    step: float = 1e-3

    def options(self) -> AnalysisOptions:
        return AnalysisOptions(
            window=self.window,
            hints=self.basis_hints,
            invariant_window=self.invariant_window,
            invariant_hints=self.invariant_hints,
            reduce_window=self.reduce_window,
            reduce_hints=self.reduce_hints,
            reduce_with=self.reduce_with,
            pair=self.pair,
        )

    def expressions(self) -> List[str]:
        """Every expression string of the entry except the equation itself."""
        out = [self.expected_lambda]
        for tau, eta in self.expected_symmetries:
            out += [tau, eta]
        for triple in self.equivalent:
            out += list(triple)
        out += self.expected_integrals + self.basis_hints + self.invariant_hints + self.reduce_hints
        for pinned in (self.reduce_with, self.pair):
            if pinned is not None:
                out += list(pinned)
        if self.reduced is not None:
            out.append(self.reduced)
        return out

    def check_grammar(self) -> None:
        """Parse the equation and then every expression; ParseFailure on the first bad one."""
        parse_ode(self.ode_text)
        for text in self.expressions():
            parse_expr(text)
        self.bindings()

    def bindings(self) -> Dict[sympy.Symbol, sympy.Expr]:
        """Specialization ``q(t) = t; p = 2`` as substitution bindings."""
        out: Dict[sympy.Symbol, sympy.Expr] = {}
        if not self.specialize:
            return out
        for part in self.specialize.split(';'):
            match = _BINDING_RE.match(part)
            if not match:
                raise ValueError(f'bad specialization {part!r}')
            name, is_function, value = match.groups()
            value = parse_expr(value)
            if is_function:
                out.update(function_bindings(name, value))
            else:
                out[sympy.Symbol(name)] = value
        return out

    @property
    def checks_drift(self) -> bool:
        return self.ic is not None and self.t_end is not None and bool(self.expected_integrals)


class EntryResult(BaseModel):
    """Outcome of one corpus entry; ``None`` marks a check that does not apply."""
    id: str
    lambda_ok: Optional[bool] = None
    symmetries_ok: Optional[bool] = None
    equivalence_ok: Optional[bool] = None
    integral_ok: Optional[bool] = None
    reduction_ok: Optional[bool] = None
    drift: Optional[float] = None
    drift_ok: Optional[bool] = None
    error: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        checks = [self.lambda_ok, self.symmetries_ok, self.equivalence_ok,
                  self.integral_ok, self.reduction_ok, self.drift_ok]
        return all(c is not False for c in checks)

    def row(self) -> dict:
        data = self.model_dump()
        data['status'] = 'pass' if self.passed else 'fail'
        if data['drift'] is not None and math.isnan(data['drift']):
            data['drift'] = None
        return data
