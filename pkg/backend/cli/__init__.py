# Lamsym CLI Package
"""
Command-line frontend.

Usage:
    python -m backend.cli analyze "y'' = -2*y*y' + q(t)*y' + q'(t)*y" --json
"""

from .main import cli

__all__ = ['cli']
