"""
Corpus runner.

Each entry is analyzed end-to-end and compared with its expected values
by exact symbolic checks: zero differences, span membership, equivalence
and functional dependence of integrals. Nothing is compared as text.

Usage:
    from backend.lamsym.corpus import run_corpus

    table = run_corpus(jobs=4)
    print(table[['id', 'status']])
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

import pandas as pd

from ..config import Settings, get_settings
from ..errors import LamsymError
from ..expr.canonical import equal
from ..jlm import lambda_from_divergence
from ..parser import parse_expr, parse_ode
from ..reduce import FirstIntegral, check_first_integral, integrals_agree, numeric_drift
from ..report import analyze
from ..symmetry import PointField, in_span, is_equivalent
from ..symmetry.equivalence import certify
from .loader import load_corpus, load_entry
from .models import CorpusEntry, EntryResult


logger = logging.getLogger(__name__)

DRIFT_TOLERANCE = 1e-6

COLUMNS = [
    'id', 'status', 'lambda_ok', 'symmetries_ok', 'equivalence_ok',
    'integral_ok', 'reduction_ok', 'drift', 'drift_ok', 'error', 'seconds',
]


def _field(tau: str, eta: str) -> PointField:
    return PointField(parse_expr(tau), parse_expr(eta))


def _check(entry: CorpusEntry, result: EntryResult, settings: Settings) -> None:
    ode = parse_ode(entry.ode_text)
    lam = lambda_from_divergence(ode)
    report = analyze(ode, entry.options(), settings)

    result.lambda_ok = equal(parse_expr(report.lambda_j), parse_expr(entry.expected_lambda))

    found = [_field(s.tau, s.eta) for s in report.symmetries]
    expected = [
        certify(ode, _field(tau, eta), lam, f'{entry.id} symmetry ({tau}, {eta})')
        for tau, eta in entry.expected_symmetries
    ]
    result.symmetries_ok = all(in_span(S.field, found) for S in expected)

    others = expected[1:] + [
        certify(ode, _field(tau, eta), parse_expr(alt), f'{entry.id} ({tau}, {eta}) with {alt}')
        for tau, eta, alt in entry.equivalent
    ]
    if expected and others:
        result.equivalence_ok = all(is_equivalent(ode, expected[0], S) for S in others)

    if entry.expected_integrals:
        integrals = [FirstIntegral(parse_expr(i)) for i in entry.expected_integrals]
        ok = all(check_first_integral(ode, i) for i in integrals)
        derived = [FirstIntegral(parse_expr(i)) for i in report.first_integrals]
        ok = ok and bool(derived) and integrals_agree(ode, derived[0], integrals[0])
        result.integral_ok = ok

    if entry.reduced is not None:
        result.reduction_ok = report.reduced_equation is not None and equal(
            parse_expr(report.reduced_equation), parse_expr(entry.reduced),
        )

    if entry.checks_drift:
        result.drift = numeric_drift(
            ode,
            FirstIntegral(parse_expr(entry.expected_integrals[0])),
            entry.bindings(),
            ic=entry.ic,
            t_end=entry.t_end,
            step=entry.step,
            settings=settings,
        )
        result.drift_ok = result.drift < DRIFT_TOLERANCE


def run_entry(entry: CorpusEntry, settings: Optional[Settings] = None) -> EntryResult:
    """Run one entry; library errors become a failed result carrying the code."""
    settings = settings or get_settings()
    result = EntryResult(id=entry.id)
    start = time.perf_counter()
    try:
        _check(entry, result, settings)
    except LamsymError as exc:
        logger.warning('corpus entry %s: %s', entry.id, exc.message)
        result.error = f'{exc.code}: {exc.message}'
    result.seconds = round(time.perf_counter() - start, 3)
    logger.info('corpus entry %s: %s', entry.id, 'pass' if result.passed else 'fail')
    return result


def run_corpus(
    ids: Optional[Sequence[str]] = None,
    jobs: int = 1,
    settings: Optional[Settings] = None,
) -> pd.DataFrame:
    """Pass/fail table, one row per entry, ordered by id.

    Unknown ids raise CorpusParseError before anything runs. With
    ``jobs`` > 1 entries run in worker processes.
    """
    settings = settings or get_settings()
    if ids:
        entries = [load_entry(i, settings.corpus_dir) for i in ids]
    else:
        entries = load_corpus(settings.corpus_dir)

    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results: List[EntryResult] = list(pool.map(run_entry, entries, [settings] * len(entries)))
    else:
        results = [run_entry(e, settings) for e in entries]

    table = pd.DataFrame([r.row() for r in results], columns=COLUMNS)
    return table.sort_values('id', kind='stable').reset_index(drop=True)
