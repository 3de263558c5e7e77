"""
Context-local diagnostics collector.

Operations that succeed with a caveat (a zero decided by evaluation, a
vanishing divergence) record it here instead of returning extra values.
Nothing is recorded unless a caller opened a collector.

Usage:
    from backend.lamsym import diagnostics

    with diagnostics.collecting() as notes:
        is_zero(expr)
    print([n.kind for n in notes])
"""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional


PROBABILISTIC = 'PROBABILISTIC'
ZERO_DIVERGENCE = 'ZERO_DIVERGENCE'


@dataclass(frozen=True)
class Diagnostic:
    """A single recorded caveat."""
    kind: str
    detail: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'detail': self.detail}


_active: ContextVar[Optional[List[Diagnostic]]] = ContextVar('lamsym_diagnostics', default=None)


@contextmanager
def collecting() -> Iterator[List[Diagnostic]]:
    """Open a fresh collector for the current context."""
    notes: List[Diagnostic] = []
    token = _active.set(notes)
    try:
        yield notes
    finally:
        _active.reset(token)


def record(kind: str, detail: str = '') -> None:
    notes = _active.get()
    if notes is not None:
        notes.append(Diagnostic(kind, detail))
