"""Exterior-calculus toolkit for electromagnetic fields in linear media.

The heavy lifting happens in the compiled ``_emdk`` extension; this package re-exports it
and locates the published JSON schemas.
"""

from pathlib import Path

from ._emdk import *  # noqa: F401,F403
from ._emdk import ValidationError, NumericalError, run_scenario, selftest  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]


def schema_path(name: str) -> Path:
    """Path of a published schema: ``"scenario"`` or ``"report"``."""
    here = Path(__file__).resolve().parent
    for candidate in (here / "schemas", here.parents[1] / "docs", here.parents[2] / "docs"):
        path = candidate / f"{name}.schema.json"
        if path.is_file():
            return path
    raise FileNotFoundError(f"schema '{name}' not found next to the package")
