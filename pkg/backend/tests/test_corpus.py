"""
Tests for the corpus loader and runner

The full-corpus fixture runs every worked equation once per module; it is
the slowest part of the suite.
"""

import sys
import os

# Add the project root to the path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

import pytest

from backend.lamsym.corpus import (
    CorpusEntry,
    EntryResult,
    load_corpus,
    load_entry,
    parse_entry_text,
    run_corpus,
    run_entry,
)
from backend.lamsym.corpus.runner import COLUMNS, DRIFT_TOLERANCE
from backend.lamsym.errors import CorpusParseError
from backend.lamsym.config import get_settings
from backend.lamsym.expr import T, equal, function, parameter
from backend.lamsym.jlm import lambda_from_divergence
from backend.lamsym.parser import parse_expr, parse_ode
from backend.lamsym.symmetry import PointField, default_basis, in_span, solve_determining


CORPUS_IDS = [
    'eq38',
    'ex4-catalano',
    'ex5-catalano',
    'kamke-542',
    'painleve-ince-V',
    'painleve-ince-XIV',
    'painleve-ince-XV',
    'painleve-ince-XVI',
    'vlr2',
]

MINIMAL = """
# free particle
id = free
ode = y'' = 0
lambda = 0
symmetry = 0 | 1
symmetry = 1 | 0
integral = y'
ic = 0, 1, 0.5
t_end = 1
"""


@pytest.fixture(scope='module')
def corpus_table():
    """Run every entry once."""
    return run_corpus()


# ============================================================================
# Loader
# ============================================================================

class TestLoader:
    """Test the key = value entry format."""

    def test_load_corpus(self):
        """Test that every entry loads, ordered by id."""
        assert [e.id for e in load_corpus()] == CORPUS_IDS

    def test_parse_minimal_entry(self):
        """Test repeated keys, bar tuples and comma tuples."""
        entry = parse_entry_text(MINIMAL)
        assert entry.id == 'free'
        assert entry.ode_text == "y'' = 0"
        assert entry.expected_symmetries == [('0', '1'), ('1', '0')]
        assert entry.ic == (0.0, 1.0, 0.5)
        assert entry.checks_drift

    def test_unknown_key(self):
        """Test that an unknown key is rejected."""
        with pytest.raises(CorpusParseError):
            parse_entry_text(MINIMAL + 'colour = red\n')

    def test_duplicate_scalar_key(self):
        """Test that a scalar key may appear once."""
        with pytest.raises(CorpusParseError) as exc_info:
            parse_entry_text(MINIMAL + 'lambda = 1\n')
        assert 'duplicate' in exc_info.value.message

    def test_line_without_value(self):
        """Test that a line without '=' is rejected."""
        with pytest.raises(CorpusParseError):
            parse_entry_text(MINIMAL + 'window\n')

    def test_missing_required_key(self):
        """Test that an entry without lambda is rejected."""
        with pytest.raises(CorpusParseError):
            parse_entry_text("id = x\node = y'' = 0\n")

    def test_grammar_checked(self):
        """Test that every expression must parse."""
        with pytest.raises(CorpusParseError):
            parse_entry_text(MINIMAL + 'basis = 2y\n')

    def test_unknown_id(self):
        """Test that a missing file is a corpus error."""
        with pytest.raises(CorpusParseError):
            load_entry('no-such-entry')

    def test_file_id_must_match(self, tmp_path):
        """Test that the declared id must equal the file name."""
        (tmp_path / 'other.txt').write_text(MINIMAL, encoding='utf-8')
        with pytest.raises(CorpusParseError):
            load_entry('other', tmp_path)

    def test_corpus_directory_override(self, tmp_path):
        """Test loading from another directory."""
        (tmp_path / 'free.txt').write_text(MINIMAL, encoding='utf-8')
        assert [e.id for e in load_corpus(tmp_path)] == ['free']


class TestEntryModel:
    """Test CorpusEntry helpers."""

    def test_bindings(self):
        """Test function and parameter specializations."""
        entry = CorpusEntry(id='x', ode_text="y'' = 0", expected_lambda='0',
                            specialize='q(t) = t^2; p = 2')
        bindings = entry.bindings()
        assert equal(bindings[function('q')], T ** 2)
        assert equal(bindings[function('q', 1)], 2 * T)
        assert bindings[parameter('p')] == 2

    def test_bad_binding(self):
        """Test that a binding needs a name and '='."""
        entry = CorpusEntry(id='x', ode_text="y'' = 0", expected_lambda='0', specialize='q(t) 3')
        with pytest.raises(ValueError):
            entry.bindings()

    def test_checks_drift(self):
        """Test which entries carry a numeric check."""
        assert load_entry('painleve-ince-V').checks_drift
        assert not load_entry('kamke-542').checks_drift

    def test_options(self):
        """Test that pinned symmetries reach the analysis options."""
        options = load_entry('kamke-542').options()
        assert options.window == 2
        assert options.reduce_with == ('0', '1/y')


class TestEntryResult:
    """Test pass/fail bookkeeping."""

    def test_inapplicable_checks_pass(self):
        """Test that checks left at None do not fail an entry."""
        assert EntryResult(id='x').passed

    def test_failed_check(self):
        """Test that one False check fails the entry."""
        assert not EntryResult(id='x', lambda_ok=True, drift_ok=False).passed

    def test_error_fails(self):
        """Test that an error fails the entry."""
        result = EntryResult(id='x', error='EMPTY_RESULT: nothing found')
        assert not result.passed
        assert result.row()['status'] == 'fail'


# ============================================================================
# Runner
# ============================================================================

class TestRunner:
    """Test run_entry and run_corpus."""

    def test_every_entry_passes(self, corpus_table):
        """Test the whole corpus."""
        failures = corpus_table[corpus_table['status'] != 'pass']
        assert failures.empty, failures[['id', 'error']].to_string()

    def test_table_shape(self, corpus_table):
        """Test columns and ordering of the table."""
        assert list(corpus_table.columns) == COLUMNS
        assert list(corpus_table['id']) == CORPUS_IDS

    def test_drift_within_tolerance(self, corpus_table):
        """Test that every numeric check stayed under the tolerance."""
        drifts = corpus_table['drift'].dropna()
        assert len(drifts) >= 3
        assert (drifts < DRIFT_TOLERANCE).all()

    def test_single_entry(self):
        """Test Painleve-Ince XVI alone."""
        result = run_entry(load_entry('painleve-ince-XVI'))
        assert result.passed
        assert result.reduction_ok
        assert result.drift_ok

    def test_parallel_matches_serial(self):
        """Test that worker processes give the same table."""
        ids = ['painleve-ince-V', 'painleve-ince-XVI']
        serial = run_corpus(ids, jobs=1).drop(columns=['seconds'])
        parallel = run_corpus(ids, jobs=2).drop(columns=['seconds'])
        assert serial.equals(parallel)

    def test_unknown_id(self):
        """Test that an unknown id fails before anything runs."""
        with pytest.raises(CorpusParseError):
            run_corpus(['painleve-ince-V', 'no-such-entry'])


# ============================================================================
# Default Window
# ============================================================================

@pytest.mark.slow
class TestDefaultWindow:
    """Test symmetry recovery at the configured window instead of the entry's."""

    @pytest.mark.parametrize('entry_id', CORPUS_IDS)
    def test_expected_symmetries_in_span(self, entry_id):
        """Test that every expected field lies in the solver's span at window 4."""
        entry = load_entry(entry_id)
        ode = parse_ode(entry.ode_text)
        basis = default_basis(ode, hints=[parse_expr(h) for h in entry.basis_hints])
        assert basis.window == get_settings().window == 4

        found = [S.field for S in solve_determining(ode, lambda_from_divergence(ode), basis)]
        for tau, eta in entry.expected_symmetries:
            assert in_span(PointField(parse_expr(tau), parse_expr(eta)), found), (tau, eta)
