"""
Tagged console diagnostics. Lines go to stderr so --json output stays clean.
"""

import sys

from config import GRAY, RESET
from core.settings_store import settings


def log(tag: str, message: str, color: str = GRAY):
    """Print "[Tag] message" when console.verbose is on."""
    if settings.get("console.verbose", False):
        print(f"{color}[{tag}] {message}{RESET}", file=sys.stderr)
