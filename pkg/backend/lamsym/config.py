"""
Runtime configuration.

Settings come from ``LAMSYM_*`` environment variables, optionally seeded from
a ``.env`` file in the working directory.

Usage:
    from backend.lamsym.config import get_settings

    settings = get_settings()
    print(settings.window)
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


REPO_ROOT = Path(__file__).resolve().parents[2]

ENV_PREFIX = 'LAMSYM_'


class Settings(BaseModel):
    """Tunable knobs of the symbolic pipeline and the numeric verifier."""

    model_config = {'frozen': True}

    window: int = Field(4, ge=0, description='Exponent window [-d, d] for the (tau, eta) ansatz')
    invariant_window: int = Field(2, ge=0)
    reduce_window: int = Field(2, ge=0)
    zero_test_points: int = Field(8, ge=1)
    zero_test_attempts: int = Field(32, ge=1)
    zero_test_seed: int = 0x5EED
    zero_test_bound: int = Field(97, ge=1)
    pole_tolerance: float = Field(1e-6, gt=0)
    corpus_dir: Path = REPO_ROOT / 'data' / 'corpus'
    log_level: str = 'WARNING'

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> 'Settings':
        """Build settings from ``LAMSYM_<FIELD>`` variables of ``environ``."""
        environ = os.environ if environ is None else environ
        values = {}
        for name in cls.model_fields:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is not None and raw != '':
                values[name] = raw
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings; ``.env`` is read once."""
    load_dotenv()
    return Settings.from_env()
