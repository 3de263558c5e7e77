"""
Tests for the end-to-end analysis report
"""

import sys
import os

# Add the project root to the path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

import json

import pytest

from backend.lamsym.corpus import load_entry
from backend.lamsym.errors import ExprSyntaxError
from backend.lamsym.expr import equal
from backend.lamsym.parser import parse_expr, parse_ode
from backend.lamsym.reduce import FirstIntegral, integrals_agree
from backend.lamsym.report import AnalysisOptions, analyze


class TestAnalyze:
    """Test the analysis pipeline."""

    def test_painleve_v(self):
        """Test the full pipeline with the pinned reduction symmetry."""
        entry = load_entry('painleve-ince-V')
        ode = parse_ode(entry.ode_text)
        report = analyze(ode, entry.options())

        assert equal(parse_expr(report.lambda_j), parse_expr('-2*y + q(t)'))
        assert not report.zero_divergence
        assert report.symmetries
        assert report.reduced_with is not None
        assert report.reduced_equation == '0'
        assert report.first_integrals
        derived = FirstIntegral(parse_expr(report.first_integrals[0]))
        assert integrals_agree(ode, derived, FirstIntegral(parse_expr(entry.expected_integrals[0])))
        assert report.diagnostics.skipped == []

    def test_zero_divergence(self):
        """Test that y'' = 0 reports a vanishing divergence."""
        report = analyze("y'' = 0", AnalysisOptions(window=1))
        assert report.lambda_j == '0'
        assert report.zero_divergence
        assert 'ZERO_DIVERGENCE' in [n['kind'] for n in report.diagnostics.notes]

    def test_equivalence_labels(self):
        """Test that labels start at 0 and point at earlier symmetries."""
        report = analyze("y'' = 0", AnalysisOptions(window=1))
        labels = [s.equivalence_class for s in report.symmetries]
        assert labels[0] == 0
        assert all(label <= k for k, label in enumerate(labels))

    def test_later_stage_failure_is_skipped(self):
        """Test that an empty invariant basis leaves the reduction out."""
        options = AnalysisOptions(window=2, invariant_window=0, reduce_with=('0', '1'))
        report = analyze(load_entry('painleve-ince-V').ode_text, options)
        assert report.symmetries
        assert report.reduced_equation is None
        assert report.first_integrals == []
        skipped, = report.diagnostics.skipped
        assert skipped['stage'] == 'reduction'
        assert skipped['code'] == 'INSUFFICIENT_BASIS'

    def test_syntax_error_propagates(self):
        """Test that parse errors are not swallowed."""
        with pytest.raises(ExprSyntaxError):
            analyze("y'' = 2y")


class TestSerialization:
    """Test the JSON form of the report."""

    def test_deterministic_without_timings(self):
        """Test that two runs serialize identically."""
        first = analyze("y'' = 0", AnalysisOptions(window=1)).to_json(timings=False)
        second = analyze("y'' = 0", AnalysisOptions(window=1)).to_json(timings=False)
        assert first == second
        assert 'timings_ms' not in json.loads(first)['diagnostics']

    def test_lambda_alias(self):
        """Test that symmetries serialize their lambda under 'lambda'."""
        data = analyze("y'' = 0", AnalysisOptions(window=1)).to_dict()
        assert 'lambda' in data['symmetries'][0]
        assert 'lam' not in data['symmetries'][0]
        assert set(data['diagnostics']['timings_ms']) >= {'lambda', 'symmetries'}
