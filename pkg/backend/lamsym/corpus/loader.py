"""
Corpus file loader.

One entry per UTF-8 file ``<id>.txt`` of ``key = value`` lines. Values use
the expression grammar; ``#`` starts a comment line. Keys that may repeat
collect into lists; tuples are separated by ``|`` (symmetries and pinned
pairs) or ``,`` (initial conditions).

    id = painleve-ince-V
    ode = y'' = -2*y*y' + q(t)*y' + q'(t)*y
    lambda = -2*y + q(t)
    symmetry = 0 | 1
    integral = -y*q(t) + y^2 + y'
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import ValidationError

from ..config import get_settings
from ..errors import CorpusParseError, ParseFailure
from .models import CorpusEntry


logger = logging.getLogger(__name__)


LIST_KEYS = {
    'symmetry': 'expected_symmetries',
    'equivalent': 'equivalent',
    'integral': 'expected_integrals',
    'basis': 'basis_hints',
    'invariant_basis': 'invariant_hints',
    'reduce_basis': 'reduce_hints',
}

SCALAR_KEYS = {
    'id': 'id',
    'title': 'title',
    'ode': 'ode_text',
    'lambda': 'expected_lambda',
    'window': 'window',
    'invariant_window': 'invariant_window',
    'reduce_window': 'reduce_window',
    'reduce_with': 'reduce_with',
    'pair': 'pair',
    'reduced': 'reduced',
    'specialize': 'specialize',
    'ic': 'ic',
    't_end': 't_end',
    'step': 'step',
}

_BAR_KEYS = {'symmetry', 'equivalent', 'reduce_with', 'pair'}


def _split(key: str, value: str):
    if key in _BAR_KEYS:
        return tuple(part.strip() for part in value.split('|'))
    if key == 'ic':
        return tuple(part.strip() for part in value.split(','))
    return value


def parse_entry_text(text: str, entry_id: str = '<string>') -> CorpusEntry:
    """Build and grammar-check an entry; any problem is a CorpusParseError."""
    fields: Dict[str, object] = {name: [] for name in LIST_KEYS.values()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise CorpusParseError(f'line {lineno}: expected key = value', entry_id)
        if key in LIST_KEYS:
            fields[LIST_KEYS[key]].append(_split(key, value))
        elif key in SCALAR_KEYS:
            name = SCALAR_KEYS[key]
            if name in fields:
                raise CorpusParseError(f'line {lineno}: duplicate key {key!r}', entry_id)
            fields[name] = _split(key, value)
        else:
            raise CorpusParseError(f'line {lineno}: unknown key {key!r}', entry_id)

    entry_id = str(fields.get('id', entry_id))
    try:
        entry = CorpusEntry(**fields)
    except ValidationError as exc:
        raise CorpusParseError(str(exc).splitlines()[0], entry_id) from exc
    try:
        entry.check_grammar()
    except (ParseFailure, ValueError) as exc:
        raise CorpusParseError(str(exc), entry_id) from exc
    return entry


def corpus_dir(path: Optional[Path] = None) -> Path:
    return Path(path) if path is not None else get_settings().corpus_dir


def load_entry(entry_id: str, path: Optional[Path] = None) -> CorpusEntry:
    """Entry ``entry_id`` from ``<corpus_dir>/<entry_id>.txt``."""
    file = corpus_dir(path) / f'{entry_id}.txt'
    if not file.is_file():
        raise CorpusParseError(f'no corpus entry named {entry_id!r} in {file.parent}', entry_id)
    entry = parse_entry_text(file.read_text(encoding='utf-8'), entry_id)
    if entry.id != entry_id:
        raise CorpusParseError(f'file declares id {entry.id!r}', entry_id)
    return entry


def load_corpus(path: Optional[Path] = None) -> List[CorpusEntry]:
    """All entries, ordered by id."""
    directory = corpus_dir(path)
    entries = [load_entry(file.stem, directory) for file in sorted(directory.glob('*.txt'))]
    logger.debug('loaded %d corpus entries from %s', len(entries), directory)
    return sorted(entries, key=lambda e: e.id)
