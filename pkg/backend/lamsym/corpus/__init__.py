"""
The worked equations as executable fixtures.
"""

from .models import CorpusEntry, EntryResult
from .loader import load_corpus, load_entry, parse_entry_text
from .runner import run_corpus, run_entry

__all__ = [
    'CorpusEntry',
    'EntryResult',
    'load_corpus',
    'load_entry',
    'parse_entry_text',
    'run_corpus',
    'run_entry',
]
