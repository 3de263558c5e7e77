"""
End-to-end analysis of a second-order ODE.

    lambda_J -> lambda-symmetries -> equivalence classes -> invariants
             -> reduced equation -> quadrature -> verified first integral

Failures up to and including the symmetry search propagate. Later stages
are attempted in order; a solver failure there (no invariants in the
basis, no reduced equation, no closed-form quadrature) is reported under
``diagnostics.skipped`` and leaves the corresponding fields empty.

Usage:
    from backend.lamsym.report import AnalysisOptions, analyze

    report = analyze("y'' = 0", AnalysisOptions(window=2))
    print(report.to_json(timings=False))
"""

import json
import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from . import diagnostics
from .config import Settings, get_settings
from .errors import SolverFailure, VerificationFailure
from .jlm import SecondOrderODE, lambda_from_divergence
from .parser import parse_expr, parse_ode, render
from .reduce import (
    FirstIntegral,
    InvariantPair,
    certify_pair,
    check_first_integral,
    find_invariants,
    integral_in_original_variables,
    invariant_basis,
    reduce_basis,
    reduce_ode,
)
from .symmetry import (
    LambdaSymmetry,
    PointField,
    default_basis,
    equivalence_classes,
    is_equivalent,
    solve_determining,
)
from .symmetry.equivalence import certify


logger = logging.getLogger(__name__)


# ============================================================================
# Options / Report Models
# ============================================================================

class AnalysisOptions(BaseModel):
    """Basis choices for each ansatz; expressions are grammar strings."""
    window: Optional[int] = None
    hints: List[str] = []
    invariant_window: Optional[int] = None
    invariant_hints: List[str] = []
    reduce_window: Optional[int] = None
    reduce_hints: List[str] = []
    reduce_with: Optional[Tuple[str, str]] = None
    pair: Optional[Tuple[str, str]] = None


class SymmetryEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    tau: str
    eta: str
    lam: str = Field(alias='lambda')
    characteristic: str
    equivalence_class: int


class PairEntry(BaseModel):
    t1: str
    y1: str


class ReportDiagnostics(BaseModel):
    probabilistic: bool = False
    notes: List[Dict[str, str]] = []
    basis_sizes: Dict[str, int] = {}
    skipped: List[Dict[str, Any]] = []
    timings_ms: Optional[Dict[str, float]] = None


class AnalysisReport(BaseModel):
    """Everything the pipeline derived for one equation."""
    ode: str
    lambda_j: str
    zero_divergence: bool
    symmetries: List[SymmetryEntry]
    reduced_with: Optional[SymmetryEntry] = None
    invariant_pairs: List[PairEntry] = []
    reduced_equation: Optional[str] = None
    first_integrals: List[str] = []
    diagnostics: ReportDiagnostics = Field(default_factory=ReportDiagnostics)

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        data = self.model_dump(by_alias=True)
        if not timings:
            data['diagnostics'].pop('timings_ms', None)
        return data

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)


# ============================================================================
# Pipeline
# ============================================================================

@contextmanager
def _timed(timings: Dict[str, float], stage: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[stage] = round((time.perf_counter() - start) * 1000.0, 3)


def _symmetry_entry(S: LambdaSymmetry, label: int) -> SymmetryEntry:
    return SymmetryEntry(
        tau=render(S.field.tau),
        eta=render(S.field.eta),
        lam=render(S.lam),
        characteristic=render(S.characteristic),
        equivalence_class=label,
    )


def _reduce(ode: SecondOrderODE, candidates: List[LambdaSymmetry], options: AnalysisOptions,
            sizes: Dict[str, int]):
    """First symmetry of ``candidates`` that yields a pair and a reduced equation."""
    ibasis = invariant_basis(ode, options.invariant_window,
                             [parse_expr(h) for h in options.invariant_hints])
    rbasis = reduce_basis(options.reduce_window, [parse_expr(h) for h in options.reduce_hints])
    sizes['invariants'] = len(ibasis)
    sizes['reduction'] = len(rbasis)

    failure: Optional[SolverFailure] = None
    for S in candidates:
        try:
            if options.pair is not None:
                t1, y1 = options.pair
                pairs = [certify_pair(ode, S, InvariantPair(parse_expr(t1), parse_expr(y1)))]
            else:
                pairs = find_invariants(ode, S, ibasis)
            G = reduce_ode(ode, pairs[0], rbasis)
            return S, pairs, G
        except SolverFailure as exc:
            logger.info('reduction with %s failed: %s', S, exc.message)
            failure = exc
    raise failure


def analyze(
    ode: Union[str, SecondOrderODE],
    options: Optional[AnalysisOptions] = None,
    settings: Optional[Settings] = None,
) -> AnalysisReport:
    """Run the whole pipeline on ``ode`` and collect a report.

    Every reported symmetry has been re-verified by the solver and every
    reported first integral by check_first_integral.
    """
    options = options or AnalysisOptions()
    settings = settings or get_settings()
    if isinstance(ode, str):
        ode = parse_ode(ode)
    window = settings.window if options.window is None else options.window

    timings: Dict[str, float] = {}
    sizes: Dict[str, int] = {}
    skipped: List[Dict[str, Any]] = []
    reduced_with = None
    pairs: List[InvariantPair] = []
    G = None
    integrals: List[FirstIntegral] = []

    with diagnostics.collecting() as notes:
        with _timed(timings, 'lambda'):
            lam = lambda_from_divergence(ode)
        zero_divergence = any(n.kind == diagnostics.ZERO_DIVERGENCE for n in notes)

        with _timed(timings, 'symmetries'):
            basis = default_basis(ode, window, [parse_expr(h) for h in options.hints])
            sizes['symmetries'] = len(basis)
            symmetries = solve_determining(ode, lam, basis)
        with _timed(timings, 'equivalence'):
            labels = equivalence_classes(ode, symmetries)

        with _timed(timings, 'reduction'):
            try:
                if options.reduce_with is not None:
                    tau, eta = options.reduce_with
                    field = PointField(parse_expr(tau), parse_expr(eta))
                    candidates = [certify(ode, field, lam, 'reduce_with')]
                else:
                    candidates = symmetries
                reduced_with, pairs, G = _reduce(ode, candidates, options, sizes)
            except SolverFailure as exc:
                skipped.append({'stage': 'reduction', **exc.to_dict()})

        if G is not None:
            with _timed(timings, 'quadrature'):
                try:
                    integral = FirstIntegral(integral_in_original_variables(G, pairs[0]))
                    if not check_first_integral(ode, integral):
                        raise VerificationFailure(f'{integral} is not a first integral of {ode}')
                    integrals.append(integral)
                except SolverFailure as exc:
                    skipped.append({'stage': 'quadrature', **exc.to_dict()})

    seen = []
    for n in notes:
        if n.to_dict() not in seen:
            seen.append(n.to_dict())

    reduced_entry = None
    if reduced_with is not None:
        label = next((labels[k] for k, S in enumerate(symmetries)
                      if is_equivalent(ode, S, reduced_with)), -1)
        reduced_entry = _symmetry_entry(reduced_with, label)

    report = AnalysisReport(
        ode=str(ode),
        lambda_j=render(lam),
        zero_divergence=zero_divergence,
        symmetries=[_symmetry_entry(S, k) for S, k in zip(symmetries, labels)],
        reduced_with=reduced_entry,
        invariant_pairs=[PairEntry(t1=render(p.t1), y1=render(p.y1)) for p in pairs],
        reduced_equation=None if G is None else render(G),
        first_integrals=[render(i.i) for i in integrals],
        diagnostics=ReportDiagnostics(
            probabilistic=any(n['kind'] == diagnostics.PROBABILISTIC for n in seen),
            notes=seen,
            basis_sizes=sizes,
            skipped=skipped,
            timings_ms=timings,
        ),
    )
    logger.info('analysis of %s: %d symmetries, %d integrals',
                report.ode, len(report.symmetries), len(report.first_integrals))
    return report
